#pragma once

#include <complex>
#include <vector>

#include "ratcheb/cheb.hpp"
#include "ratcheb/divisor.hpp"
#include "ratcheb/mobius.hpp"

namespace ratcheb {

/// Descriptor of one working-basis element for the space L(D): the constant
/// and scaled Chebyshev polynomials T_k((z-center)/halfspan) for the part at
/// infinity, and inverse powers (c - z)^{-k} for each finite atom.
struct BasisFunction {
  enum class Kind { poly, inverse };
  Kind kind;
  int k;              // Chebyshev degree, or inverse power
  double pole = 0.0;  // finite pole location for Kind::inverse
};

class RationalBasis {
 public:
  RationalBasis(PoleDivisor divisor, double center, double halfspan);

  int size() const { return static_cast<int>(funcs_.size()); }
  const std::vector<BasisFunction>& functions() const { return funcs_; }
  const PoleDivisor& divisor() const { return divisor_; }
  double center() const { return center_; }
  double halfspan() const { return halfspan_; }

  void eval(double x, double* out) const;
  void eval(const std::complex<double>& z, std::complex<double>* out) const;
  void eval_deriv(double x, double* out) const;

  /// Vector of the functional F -> lim_{x->inf} F(x) / x^d applied to each
  /// basis element, d = divisor(infinity).
  std::vector<double> leading_functional() const;

  /// Index of the poly basis function of degree k (k <= divisor(inf)).
  int poly_index(int k) const;
  /// Index of (pole - z)^{-k}.
  int inverse_index(double pole, int k) const;

 private:
  PoleDivisor divisor_;
  double center_, halfspan_;
  std::vector<BasisFunction> funcs_;
};

/// Element of L(D) held as coefficients over RationalBasis(D, center, half),
/// with a cached numerator (Chebyshev series on the hull) and the denominator
/// root list prod (c - z)^{D(c)}.
class RationalFn {
 public:
  RationalFn(PoleDivisor divisor, double center, double halfspan, std::vector<double> coeffs);

  static RationalFn constant(const PoleDivisor& divisor, double center, double halfspan,
                             double value);

  const PoleDivisor& pole_divisor() const { return basis_.divisor(); }
  const RationalBasis& basis() const { return basis_; }
  const std::vector<double>& coeffs() const { return coeffs_; }
  double center() const { return basis_.center(); }
  double halfspan() const { return basis_.halfspan(); }

  /// Evaluation through the partial-fraction basis.  At a pole, returns the
  /// infinity marker (both components infinite) rather than throwing.
  std::complex<double> eval(const std::complex<double>& z) const;
  double eval(double x) const;
  double eval_deriv(double x) const;

  /// Evaluation through the cached P / R_n form.
  std::complex<double> eval_pr(const std::complex<double>& z) const;

  const std::vector<double>& numerator_cheb() const { return numerator_; }
  std::vector<std::pair<double, int>> denominator_roots() const {
    return basis_.divisor().finite_atoms();
  }

  bool is_constant(double rel_tol = 1e-13) const;

  /// lim_{x->x_star} F(x) / r(x, x_star)^d.  Throws domain_error when the
  /// pole order of F at x_star exceeds d.
  double leading_coeff(const ExtPoint& x_star, int d) const;

  /// Actual pole divisor (F)_infty, with order reductions detected by the
  /// eps_pole coefficient threshold.
  PoleDivisor polar_divisor(double eps_pole = 1e-8) const;

  /// Generalized-zero divisor D^0 = (F)_0 + D - (F)_infty.  Real zeros only;
  /// complex numerator roots (possible for non-extremal input) are left out
  /// of the divisor and can be inspected via numerator_roots().
  ZeroDivisor generalized_zeros(double eps_pole = 1e-8) const;

  /// All numerator roots after removing pole-cancellation factors.
  std::vector<std::complex<double>> numerator_roots(double eps_pole = 1e-8) const;

  /// deg F = deg (F)_infty.
  int degree(double eps_pole = 1e-8) const;

 private:
  RationalBasis basis_;
  std::vector<double> coeffs_;
  std::vector<double> numerator_;  // Chebyshev series in u = (z-center)/half
};

/// Given G over the normalized divisor and the normalizing map T (original ->
/// normalized), returns F = G o T as an element over the original divisor on
/// the given hull.  Exact coefficient transfer; no sampling.
RationalFn pullback_through(const RationalFn& g, const Mobius& T, const PoleDivisor& original,
                            double center, double halfspan);

}  // namespace ratcheb
