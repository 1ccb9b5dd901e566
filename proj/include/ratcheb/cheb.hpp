#pragma once

#include <complex>
#include <vector>

namespace ratcheb {

/// Utilities for polynomial arithmetic in the Chebyshev basis on [-1, 1].
/// Series are coefficient vectors a with p(u) = sum a_k T_k(u).
namespace cheb {

double clenshaw(const std::vector<double>& a, double u);
std::complex<double> clenshaw(const std::vector<double>& a, std::complex<double> u);

/// Product of two series.
std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b);

/// Multiply a series by the linear factor (alpha + beta * u).
std::vector<double> mul_linear(const std::vector<double>& a, double alpha, double beta);

std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b);
std::vector<double> scale(const std::vector<double>& a, double s);

/// Coefficients of d/du of the series.
std::vector<double> derivative(const std::vector<double>& a);

/// Monomial coefficients (ascending powers of u) of the series; intended for
/// small degrees only.
std::vector<double> to_monomial(const std::vector<double>& a);

/// Chebyshev coefficients of a polynomial given by ascending monomial
/// coefficients in u.
std::vector<double> from_monomial(const std::vector<double>& mono);

/// Index of the last coefficient with |a_k| > tol * max|a|; -1 if all are
/// below the threshold.
int effective_degree(const std::vector<double>& a, double rel_tol);

/// All roots of the series (colleague-matrix eigenvalues).  Coefficients
/// above degree `deg` are ignored; pass effective_degree() to trim noise.
std::vector<std::complex<double>> roots(const std::vector<double>& a, int deg);

}  // namespace cheb
}  // namespace ratcheb
