#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace ratcheb {
namespace quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule on [-1, 1]; cached per order.
const Rule& gauss_legendre(int n);

/// Adaptive-order integral of f over [0, pi] with midpoint (Gauss-Chebyshev
/// theta) nodes, doubling the order until two successive values differ by
/// less than tol (absolute + relative); order capped at 2^14.
double integrate_theta(const std::function<double(double)>& f, double tol);

/// Complex line integral of f along the straight segment [z0, z1] by
/// Gauss-Legendre order doubling (cap 2^12 points).
std::complex<double> integrate_segment(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    std::complex<double> z0, std::complex<double> z1, double tol);

/// Real integral of f over [a, b] by Gauss-Legendre order doubling.
double integrate_real(const std::function<double(double)>& f, double a, double b, double tol);

}  // namespace quad
}  // namespace ratcheb
