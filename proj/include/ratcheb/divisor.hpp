#pragma once

#include <algorithm>
#include <vector>

#include "ratcheb/compact_set.hpp"
#include "ratcheb/errors.hpp"
#include "ratcheb/ext_point.hpp"

namespace ratcheb {

/// Integral divisor with atoms on the extended real line.  Used both for the
/// prescribed pole divisor D_n^infty and for generalized-zero divisors D_n^0.
class IntegralDivisor {
 public:
  IntegralDivisor() = default;

  void add(const ExtPoint& p, int mult) {
    if (mult <= 0) throw argument_error("divisor: multiplicity must be positive");
    for (auto& a : atoms_) {
      if (a.first == p) {
        a.second += mult;
        return;
      }
    }
    atoms_.emplace_back(p, mult);
    std::sort(atoms_.begin(), atoms_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }

  int at(const ExtPoint& p) const {
    for (const auto& a : atoms_)
      if (a.first == p) return a.second;
    return 0;
  }

  int degree() const {
    int n = 0;
    for (const auto& a : atoms_) n += a.second;
    return n;
  }

  const std::vector<std::pair<ExtPoint, int>>& atoms() const { return atoms_; }

  std::vector<std::pair<double, int>> finite_atoms() const {
    std::vector<std::pair<double, int>> out;
    for (const auto& a : atoms_)
      if (!a.first.inf) out.emplace_back(a.first.value, a.second);
    return out;
  }

  int at_infinity() const { return at(ExtPoint::infinity()); }
  bool empty() const { return atoms_.empty(); }

  friend bool operator==(const IntegralDivisor& x, const IntegralDivisor& y) {
    return x.atoms_ == y.atoms_;
  }

 private:
  std::vector<std::pair<ExtPoint, int>> atoms_;
};

using PoleDivisor = IntegralDivisor;
using ZeroDivisor = IntegralDivisor;

/// Every atom must lie strictly inside a gap of E (never on E, never at a gap
/// edge).
inline void validate_divisor_off_set(const PoleDivisor& D, const CompactSet& E) {
  for (const auto& a : D.atoms()) {
    if (a.first.inf) {
      if (E.contains_infinity()) throw domain_error("divisor: atom at infinity lies in E");
      continue;
    }
    const double c = a.first.value;
    for (const auto& iv : E.intervals())
      if (iv.lo <= c && c <= iv.hi) throw domain_error("divisor: atom lies on E or a gap edge");
  }
}

}  // namespace ratcheb
