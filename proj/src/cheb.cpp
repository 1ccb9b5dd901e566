#include "ratcheb/cheb.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ratcheb/errors.hpp"

namespace ratcheb {
namespace cheb {

namespace {
template <typename Scalar>
Scalar clenshaw_impl(const std::vector<double>& a, Scalar u) {
  if (a.empty()) return Scalar(0);
  Scalar b1(0), b2(0);
  for (std::size_t k = a.size(); k-- > 1;) {
    Scalar b0 = 2.0 * u * b1 - b2 + a[k];
    b2 = b1;
    b1 = b0;
  }
  return u * b1 - b2 + a[0];
}
}  // namespace

double clenshaw(const std::vector<double>& a, double u) { return clenshaw_impl(a, u); }

std::complex<double> clenshaw(const std::vector<double>& a, std::complex<double> u) {
  return clenshaw_impl(a, u);
}

std::vector<double> mul(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> out(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double w = 0.5 * a[i] * b[j];
      out[i + j] += w;
      out[i > j ? i - j : j - i] += w;
    }
  }
  return out;
}

std::vector<double> mul_linear(const std::vector<double>& a, double alpha, double beta) {
  std::vector<double> out(a.size() + 1, 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) {
    out[k] += alpha * a[k];
    // u * T_k = (T_{k+1} + T_{|k-1|}) / 2, with u * T_0 = T_1.
    if (k == 0) {
      out[1] += beta * a[0];
    } else {
      out[k + 1] += 0.5 * beta * a[k];
      out[k - 1] += 0.5 * beta * a[k];
    }
  }
  return out;
}

std::vector<double> add(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] += b[k];
  return out;
}

std::vector<double> sub(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t k = 0; k < a.size(); ++k) out[k] += a[k];
  for (std::size_t k = 0; k < b.size(); ++k) out[k] -= b[k];
  return out;
}

std::vector<double> scale(const std::vector<double>& a, double s) {
  std::vector<double> out(a);
  for (double& x : out) x *= s;
  return out;
}

std::vector<double> derivative(const std::vector<double>& a) {
  if (a.size() <= 1) return {0.0};
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<double> d(n, 0.0);
  // d_{k-1} = d_{k+1} + 2k a_k, downward recurrence.
  double dkp1 = 0.0, dkp2 = 0.0;
  for (int k = n; k >= 1; --k) {
    double dk = dkp2 + 2.0 * k * a[k];
    d[k - 1] = dk;
    dkp2 = dkp1;
    dkp1 = dk;
  }
  d[0] *= 0.5;
  return d;
}

std::vector<double> to_monomial(const std::vector<double>& a) {
  // T_{k+1} = 2u T_k - T_{k-1}; build monomial forms iteratively.
  std::vector<double> out(std::max<std::size_t>(a.size(), 1), 0.0);
  std::vector<double> tkm1{1.0}, tk{0.0, 1.0};
  if (!a.empty()) out[0] += a[0];
  if (a.size() > 1)
    for (std::size_t i = 0; i < tk.size(); ++i) out[i] += a[1] * tk[i];
  for (std::size_t k = 2; k < a.size(); ++k) {
    std::vector<double> tkp1(k + 1, 0.0);
    for (std::size_t i = 0; i < tk.size(); ++i) tkp1[i + 1] += 2.0 * tk[i];
    for (std::size_t i = 0; i < tkm1.size(); ++i) tkp1[i] -= tkm1[i];
    for (std::size_t i = 0; i < tkp1.size(); ++i) out[i] += a[k] * tkp1[i];
    tkm1 = tk;
    tk = tkp1;
  }
  return out;
}

std::vector<double> from_monomial(const std::vector<double>& mono) {
  // u^k expanded over T_j by the inverse of the recurrence; small degrees.
  std::vector<double> out{0.0};
  std::vector<double> uk{1.0};  // u^k in the Chebyshev basis
  for (std::size_t k = 0; k < mono.size(); ++k) {
    if (k > 0) uk = mul_linear(uk, 0.0, 1.0);
    if (mono[k] != 0.0) out = add(out, scale(uk, mono[k]));
  }
  return out;
}

int effective_degree(const std::vector<double>& a, double rel_tol) {
  double mx = 0.0;
  for (double x : a) mx = std::max(mx, std::abs(x));
  if (mx == 0.0) return -1;
  for (int k = static_cast<int>(a.size()) - 1; k >= 0; --k)
    if (std::abs(a[k]) > rel_tol * mx) return k;
  return -1;
}

std::vector<std::complex<double>> roots(const std::vector<double>& a, int deg) {
  if (deg < 1) return {};
  if (deg == 1) {
    // a0 + a1 u = 0
    return {std::complex<double>(-a[0] / a[1], 0.0)};
  }
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  C(0, 1) = 1.0;
  for (int i = 1; i < deg - 1; ++i) {
    C(i, i - 1) = 0.5;
    C(i, i + 1) = 0.5;
  }
  const double an = a[deg];
  for (int j = 0; j < deg; ++j) C(deg - 1, j) = -a[j] / (2.0 * an);
  C(deg - 1, deg - 2) += 0.5;

  Eigen::EigenSolver<Eigen::MatrixXd> es(C, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw numeric_error("cheb::roots: eigensolver failed");
  std::vector<std::complex<double>> out(deg);
  for (int i = 0; i < deg; ++i) out[i] = es.eigenvalues()[i];
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
    if (x.real() != y.real()) return x.real() < y.real();
    return x.imag() < y.imag();
  });
  return out;
}

}  // namespace cheb
}  // namespace ratcheb
