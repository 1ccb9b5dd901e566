#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "ratcheb/compact_set.hpp"
#include "ratcheb/divisor.hpp"
#include "ratcheb/ext_point.hpp"

namespace ratcheb {

/// Numeric model of the Green function G_E(z, c) for a finite union of real
/// intervals E and a pole c off E.  The differential is
///     M(t) / ((t - c) sqrt(R(t))) dt      (finite c)
///     M(t) / sqrt(R(t)) dt                (c = infinity)
/// with R(t) = prod (t - e_j) over the 2(g+1) endpoints and M a real
/// polynomial of degree at most g fixed by the residue normalization at c and
/// by vanishing gap periods (principal value on the gap containing c).
class GreenModel {
 public:
  GreenModel(CompactSet set, ExtPoint pole);

  const CompactSet& set() const { return set_; }
  const ExtPoint& pole() const { return pole_; }

  /// Coefficients of M in ascending powers of tau = (t - center) / halfspan.
  const std::vector<double>& numerator_coeffs() const { return m_; }
  /// Achieved absolute residuals of the gap-period conditions.
  const std::vector<double>& period_residuals() const { return period_residuals_; }
  /// Real roots of M (critical points of G), in t coordinates.
  std::vector<double> critical_points() const;

  /// G_E(z, c); returns +infinity at the pole, values near 0 on E.
  double eval(std::complex<double> z) const;

  /// Harmonic-measure density d omega / dx at x in the interior of E.
  double density(double x) const;

  /// omega_E([lo, hi], c) for [lo, hi] contained in E.
  double harmonic_measure(double lo, double hi) const;
  double total_mass() const;

 private:
  double m_at(double tau_arg) const;
  std::complex<double> sqrtR(const std::complex<double>& z) const;
  std::complex<double> sqrtR_excluding(const std::complex<double>& z, std::size_t skip) const;
  std::complex<double> integrand(const std::complex<double>& t) const;
  std::complex<double> leg_from_endpoint(std::size_t endpoint_idx, std::complex<double> z1) const;

  CompactSet set_;
  ExtPoint pole_;
  std::vector<double> endpoints_;
  double center_ = 0.0, half_ = 1.0;
  std::vector<double> m_;
  std::vector<double> period_residuals_;
};

/// Shared, cached model lookup keyed by (endpoints, pole).  Cache hits never
/// change numeric results.
std::shared_ptr<const GreenModel> green_model(const CompactSet& E, const ExtPoint& pole);

double green_eval(const CompactSet& E, const ExtPoint& pole, std::complex<double> z);

struct WeightedAtom {
  ExtPoint c;
  double w = 0.0;
};

/// sum_i w_i G_E(z, c_i) with models cached per atom.
double green_sum(const CompactSet& E, const std::vector<WeightedAtom>& atoms,
                 std::complex<double> z);

/// Pieces of E2 minus E1 (E1 must be contained in E2).
std::vector<Interval> set_difference(const CompactSet& E2, const CompactSet& E1);

/// | G_E1(z,c) - G_E2(z,c) - int_{E2 \ E1} G_E1(z,x) omega_E2(dx,c) |.
double koosis_residual(const CompactSet& E1, const CompactSet& E2, const ExtPoint& c,
                       std::complex<double> z);

}  // namespace ratcheb
