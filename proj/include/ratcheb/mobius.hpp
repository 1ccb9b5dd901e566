#pragma once

#include <cmath>
#include <complex>

#include "ratcheb/errors.hpp"
#include "ratcheb/ext_point.hpp"

namespace ratcheb {

/// Orientation-preserving Moebius transformation of the extended real line,
/// z -> (a z + b) / (c z + d) with ad - bc > 0.
class Mobius {
 public:
  Mobius(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
    if (!(det() > 0.0)) throw argument_error("Mobius: determinant must be positive");
  }

  static Mobius identity() { return Mobius(1, 0, 0, 1); }
  /// z -> slope * z + offset, slope > 0.
  static Mobius affine(double slope, double offset) { return Mobius(slope, offset, 0, 1); }
  /// z -> -1 / (z - x0); sends x0 to infinity, preserves orientation.
  static Mobius inversion_about(double x0) { return Mobius(0, -1, 1, -x0); }

  double det() const { return a_ * d_ - b_ * c_; }
  bool is_affine() const { return c_ == 0.0; }
  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }

  ExtPoint operator()(const ExtPoint& p) const {
    if (p.inf) {
      if (c_ == 0.0) return ExtPoint::infinity();
      return ExtPoint{a_ / c_, false};
    }
    const double den = c_ * p.value + d_;
    if (den == 0.0) return ExtPoint::infinity();
    const double num = a_ * p.value + b_;
    const double v = num / den;
    if (!std::isfinite(v)) return ExtPoint::infinity();
    return ExtPoint{v, false};
  }

  std::complex<double> operator()(const std::complex<double>& z) const {
    return (a_ * z + b_) / (c_ * z + d_);
  }

  Mobius inverse() const { return Mobius(d_, -b_, -c_, a_); }

  /// Composition: (this ∘ g)(z) = this(g(z)).
  Mobius compose(const Mobius& g) const {
    return Mobius(a_ * g.a_ + b_ * g.c_, a_ * g.b_ + b_ * g.d_,
                  c_ * g.a_ + d_ * g.c_, c_ * g.b_ + d_ * g.d_);
  }

 private:
  double a_, b_, c_, d_;
};

}  // namespace ratcheb
