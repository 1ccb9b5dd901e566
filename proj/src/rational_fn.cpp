#include "ratcheb/rational_fn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ratcheb/errors.hpp"

namespace ratcheb {

namespace {

double binom(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

RationalBasis::RationalBasis(PoleDivisor divisor, double center, double halfspan)
    : divisor_(std::move(divisor)), center_(center), halfspan_(halfspan) {
  if (!(halfspan_ > 0.0)) throw argument_error("RationalBasis: halfspan must be positive");
  const int d = divisor_.at_infinity();
  for (int k = 0; k <= d; ++k) funcs_.push_back(BasisFunction{BasisFunction::Kind::poly, k, 0.0});
  for (const auto& atom : divisor_.finite_atoms())
    for (int k = 1; k <= atom.second; ++k)
      funcs_.push_back(BasisFunction{BasisFunction::Kind::inverse, k, atom.first});
}

int RationalBasis::poly_index(int k) const {
  if (k < 0 || k > divisor_.at_infinity()) throw argument_error("poly_index out of range");
  return k;
}

int RationalBasis::inverse_index(double pole, int k) const {
  for (std::size_t i = 0; i < funcs_.size(); ++i)
    if (funcs_[i].kind == BasisFunction::Kind::inverse && funcs_[i].pole == pole &&
        funcs_[i].k == k)
      return static_cast<int>(i);
  throw argument_error("inverse_index: no such basis function");
}

void RationalBasis::eval(double x, double* out) const {
  const double u = (x - center_) / halfspan_;
  double tkm1 = 1.0, tk = u;
  for (std::size_t i = 0; i < funcs_.size(); ++i) {
    const auto& f = funcs_[i];
    if (f.kind == BasisFunction::Kind::poly) {
      if (f.k == 0) {
        out[i] = 1.0;
      } else if (f.k == 1) {
        out[i] = u;
      } else {
        // funcs are ordered by ascending k, so the recurrence walks forward
        const double tkp1 = 2.0 * u * tk - tkm1;
        tkm1 = tk;
        tk = tkp1;
        out[i] = tk;
      }
    } else {
      const double w = 1.0 / (f.pole - x);
      out[i] = std::pow(w, f.k);
    }
  }
}

void RationalBasis::eval(const std::complex<double>& z, std::complex<double>* out) const {
  const std::complex<double> u = (z - center_) / halfspan_;
  std::complex<double> tkm1 = 1.0, tk = u;
  for (std::size_t i = 0; i < funcs_.size(); ++i) {
    const auto& f = funcs_[i];
    if (f.kind == BasisFunction::Kind::poly) {
      if (f.k == 0) {
        out[i] = 1.0;
      } else if (f.k == 1) {
        out[i] = u;
      } else {
        const std::complex<double> tkp1 = 2.0 * u * tk - tkm1;
        tkm1 = tk;
        tk = tkp1;
        out[i] = tk;
      }
    } else {
      const std::complex<double> w = 1.0 / (f.pole - z);
      out[i] = std::pow(w, f.k);
    }
  }
}

void RationalBasis::eval_deriv(double x, double* out) const {
  const double u = (x - center_) / halfspan_;
  // T_k' = k U_{k-1}
  double ukm1 = 1.0, uk = 2.0 * u;  // U_0, U_1
  for (std::size_t i = 0; i < funcs_.size(); ++i) {
    const auto& f = funcs_[i];
    if (f.kind == BasisFunction::Kind::poly) {
      if (f.k == 0) {
        out[i] = 0.0;
      } else if (f.k == 1) {
        out[i] = 1.0 / halfspan_;
      } else if (f.k == 2) {
        out[i] = 2.0 * uk / halfspan_;
      } else {
        const double ukp1 = 2.0 * u * uk - ukm1;
        ukm1 = uk;
        uk = ukp1;
        out[i] = f.k * uk / halfspan_;
      }
    } else {
      const double w = 1.0 / (f.pole - x);
      out[i] = f.k * std::pow(w, f.k + 1);
    }
  }
}

std::vector<double> RationalBasis::leading_functional() const {
  const int d = divisor_.at_infinity();
  std::vector<double> l(funcs_.size(), 0.0);
  if (d == 0) {
    l[poly_index(0)] = 1.0;  // F(inf)
  } else {
    l[poly_index(d)] = std::pow(2.0, d - 1) / std::pow(halfspan_, d);
  }
  return l;
}

RationalFn::RationalFn(PoleDivisor divisor, double center, double halfspan,
                       std::vector<double> coeffs)
    : basis_(std::move(divisor), center, halfspan), coeffs_(std::move(coeffs)) {
  if (static_cast<int>(coeffs_.size()) != basis_.size())
    throw argument_error("RationalFn: coefficient count must be n+1");

  // Cache the numerator P = F * prod (c - z)^{D(c)} as a Chebyshev series.
  const auto fin = basis_.divisor().finite_atoms();
  const double C = basis_.center(), H = basis_.halfspan();
  auto linear_pow = [&](std::vector<double> base, double c, int p) {
    for (int q = 0; q < p; ++q) base = cheb::mul_linear(base, c - C, -H);
    return base;
  };

  std::vector<double> num{0.0};
  // polynomial part
  {
    const int d = basis_.divisor().at_infinity();
    std::vector<double> poly(d + 1, 0.0);
    for (int k = 0; k <= d; ++k) poly[k] = coeffs_[basis_.poly_index(k)];
    std::vector<double> full = poly;
    for (const auto& a : fin) full = linear_pow(std::move(full), a.first, a.second);
    num = cheb::add(num, full);
  }
  // inverse parts
  for (const auto& a : fin) {
    std::vector<double> others{1.0};
    for (const auto& b : fin)
      if (b.first != a.first) others = linear_pow(std::move(others), b.first, b.second);
    for (int k = 1; k <= a.second; ++k) {
      const double w = coeffs_[basis_.inverse_index(a.first, k)];
      if (w == 0.0) continue;
      std::vector<double> term = linear_pow(others, a.first, a.second - k);
      num = cheb::add(num, cheb::scale(term, w));
    }
  }
  numerator_ = std::move(num);
}

RationalFn RationalFn::constant(const PoleDivisor& divisor, double center, double halfspan,
                                double value) {
  RationalBasis b(divisor, center, halfspan);
  std::vector<double> coeffs(b.size(), 0.0);
  coeffs[b.poly_index(0)] = value;
  return RationalFn(divisor, center, halfspan, std::move(coeffs));
}

std::complex<double> RationalFn::eval(const std::complex<double>& z) const {
  for (const auto& a : basis_.divisor().finite_atoms())
    if (z == std::complex<double>(a.first, 0.0)) return {kInf, kInf};
  std::vector<std::complex<double>> vals(basis_.size());
  basis_.eval(z, vals.data());
  std::complex<double> s = 0.0;
  for (int i = 0; i < basis_.size(); ++i) s += coeffs_[i] * vals[i];
  return s;
}

double RationalFn::eval(double x) const {
  for (const auto& a : basis_.divisor().finite_atoms())
    if (x == a.first) return kInf;
  std::vector<double> vals(basis_.size());
  basis_.eval(x, vals.data());
  double s = 0.0;
  for (int i = 0; i < basis_.size(); ++i) s += coeffs_[i] * vals[i];
  return s;
}

double RationalFn::eval_deriv(double x) const {
  std::vector<double> vals(basis_.size());
  basis_.eval_deriv(x, vals.data());
  double s = 0.0;
  for (int i = 0; i < basis_.size(); ++i) s += coeffs_[i] * vals[i];
  return s;
}

std::complex<double> RationalFn::eval_pr(const std::complex<double>& z) const {
  const std::complex<double> u = (z - center()) / halfspan();
  std::complex<double> den = 1.0;
  for (const auto& a : basis_.divisor().finite_atoms())
    for (int q = 0; q < a.second; ++q) den *= (a.first - z);
  if (den == 0.0) return {kInf, kInf};
  return cheb::clenshaw(numerator_, u) / den;
}

bool RationalFn::is_constant(double rel_tol) const {
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return true;
  for (int i = 0; i < basis_.size(); ++i) {
    const auto& f = basis_.functions()[i];
    if (f.kind == BasisFunction::Kind::poly && f.k == 0) continue;
    if (std::abs(coeffs_[i]) > rel_tol * scale) return false;
  }
  return true;
}

double RationalFn::leading_coeff(const ExtPoint& x_star, int d) const {
  if (d < 0) throw argument_error("leading_coeff: d must be nonnegative");
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  const double tol = 1e-12 * std::max(scale, 1.0);

  if (x_star.inf) {
    const int dn = basis_.divisor().at_infinity();
    for (int k = d + 1; k <= dn; ++k)
      if (std::abs(coeffs_[basis_.poly_index(k)]) > tol)
        throw domain_error("leading_coeff: pole order at infinity exceeds d");
    if (d == 0) return coeffs_[basis_.poly_index(0)];
    if (d > dn) return 0.0;
    return coeffs_[basis_.poly_index(d)] * std::pow(2.0, d - 1) / std::pow(halfspan(), d);
  }

  const int mult = basis_.divisor().at(x_star);
  for (int k = d + 1; k <= mult; ++k)
    if (std::abs(coeffs_[basis_.inverse_index(x_star.value, k)]) > tol)
      throw domain_error("leading_coeff: pole order at x_star exceeds d");
  if (d == 0) {
    const double v = eval(x_star.value);
    if (!std::isfinite(v)) throw domain_error("leading_coeff: unexpected pole at x_star");
    return v;
  }
  if (d > mult) return 0.0;
  return coeffs_[basis_.inverse_index(x_star.value, d)];
}

PoleDivisor RationalFn::polar_divisor(double eps_pole) const {
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  PoleDivisor out;
  if (scale == 0.0) return out;
  const double tol = eps_pole * scale;
  for (const auto& a : basis_.divisor().finite_atoms()) {
    int order = 0;
    for (int k = a.second; k >= 1; --k) {
      if (std::abs(coeffs_[basis_.inverse_index(a.first, k)]) > tol) {
        order = k;
        break;
      }
    }
    if (order > 0) out.add(ExtPoint::finite(a.first), order);
  }
  const int dn = basis_.divisor().at_infinity();
  int order_inf = 0;
  for (int k = dn; k >= 1; --k) {
    if (std::abs(coeffs_[basis_.poly_index(k)]) > tol) {
      order_inf = k;
      break;
    }
  }
  if (order_inf > 0) out.add(ExtPoint::infinity(), order_inf);
  return out;
}

std::vector<std::complex<double>> RationalFn::numerator_roots(double eps_pole) const {
  const int degP = cheb::effective_degree(numerator_, 1e-12);
  if (degP < 1) return {};
  auto uroots = cheb::roots(numerator_, degP);

  // Remove the factor (c - z)^{reduction} contributed by each pole-order
  // reduction: the reduction-many roots nearest the atom.
  const PoleDivisor actual = polar_divisor(eps_pole);
  for (const auto& a : basis_.divisor().finite_atoms()) {
    const int red = a.second - actual.at(ExtPoint::finite(a.first));
    const double uc = (a.first - center()) / halfspan();
    for (int q = 0; q < red && !uroots.empty(); ++q) {
      std::size_t best = 0;
      for (std::size_t i = 1; i < uroots.size(); ++i)
        if (std::abs(uroots[i] - uc) < std::abs(uroots[best] - uc)) best = i;
      uroots.erase(uroots.begin() + best);
    }
  }

  std::vector<std::complex<double>> out;
  out.reserve(uroots.size());
  for (const auto& u : uroots) {
    std::complex<double> z = center() + halfspan() * u;
    if (std::abs(z.imag()) <= 1e-8 * std::max(1.0, std::abs(z.real()))) z = {z.real(), 0.0};
    out.push_back(z);
  }
  return out;
}

ZeroDivisor RationalFn::generalized_zeros(double eps_pole) const {
  double scale = 0.0;
  for (double c : coeffs_) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw domain_error("generalized_zeros: zero function");
  if (is_constant(eps_pole)) {
    // Full reduction at every atom.
    ZeroDivisor out;
    for (const auto& a : basis_.divisor().atoms()) out.add(a.first, a.second);
    return out;
  }

  const PoleDivisor actual = polar_divisor(eps_pole);
  ZeroDivisor out;
  for (const auto& a : basis_.divisor().finite_atoms()) {
    const int red = a.second - actual.at(ExtPoint::finite(a.first));
    if (red > 0) out.add(ExtPoint::finite(a.first), red);
  }
  const int r_inf = basis_.divisor().at_infinity() - actual.at_infinity();

  for (const auto& z : numerator_roots(eps_pole))
    if (z.imag() == 0.0) out.add(ExtPoint::finite(z.real()), 1);

  // deg P = n - r_inf - s where s is the zero order at infinity.
  const int degP = cheb::effective_degree(numerator_, 1e-12);
  const int n = basis_.divisor().degree();
  const int s = std::max(0, n - r_inf - std::max(degP, 0));
  if (s + r_inf > 0) out.add(ExtPoint::infinity(), s + r_inf);
  return out;
}

int RationalFn::degree(double eps_pole) const {
  if (is_constant(eps_pole)) return 0;
  return polar_divisor(eps_pole).degree();
}

RationalFn pullback_through(const RationalFn& g, const Mobius& T, const PoleDivisor& original,
                            double center, double halfspan) {
  RationalBasis ob(original, center, halfspan);
  std::vector<double> out(ob.size(), 0.0);
  const RationalBasis& nb = g.basis();
  const auto& a = g.coeffs();

  auto nearest_orig_atom = [&](double c) -> double {
    double best = 0.0, bd = kInf;
    for (const auto& atom : original.finite_atoms()) {
      const double d2 = std::abs(atom.first - c);
      if (d2 < bd) {
        bd = d2;
        best = atom.first;
      }
    }
    if (!(bd <= 1e-6 * (1.0 + std::abs(c))))
      throw internal_error("pullback: normalized atom does not match an original atom");
    return best;
  };

  // Adds a polynomial given by ascending monomial coefficients in z.
  auto add_mono_poly = [&](const std::vector<double>& mono, double w) {
    if (w == 0.0) return;
    // z = center + halfspan * u
    std::vector<double> umono(mono.size(), 0.0);
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (mono[i] == 0.0) continue;
      for (std::size_t q = 0; q <= i; ++q)
        umono[q] += mono[i] * binom(static_cast<int>(i), static_cast<int>(q)) *
                    std::pow(center, static_cast<double>(i - q)) *
                    std::pow(halfspan, static_cast<double>(q));
    }
    const std::vector<double> ch = cheb::from_monomial(umono);
    const int d = original.at_infinity();
    double mx = 0.0;
    for (double x : ch) mx = std::max(mx, std::abs(x));
    for (int k = 0; k < static_cast<int>(ch.size()); ++k) {
      if (ch[k] == 0.0) continue;
      if (k > d) {
        if (std::abs(ch[k]) > 1e-10 * std::max(1.0, mx))
          throw internal_error("pullback: polynomial degree exceeds divisor order at infinity");
        continue;
      }
      out[ob.poly_index(k)] += w * ch[k];
    }
  };

  if (T.is_affine()) {
    const double s = T.a() / T.d();
    const double t = T.b() / T.d();
    // u_norm(T(z)) = A + B * u_orig(z)
    const double B = s * halfspan / nb.halfspan();
    const double A = (s * center + t - nb.center()) / nb.halfspan();
    // Chebyshev composition with an affine argument via the recurrence.
    std::vector<std::vector<double>> comp;  // T_k(A + B u) as series in u
    const int dn = nb.divisor().at_infinity();
    comp.push_back({1.0});
    if (dn >= 1) comp.push_back({A, B});
    for (int k = 2; k <= dn; ++k) {
      auto next = cheb::sub(cheb::scale(cheb::mul_linear(comp[k - 1], A, B), 2.0), comp[k - 2]);
      comp.push_back(std::move(next));
    }
    for (int k = 0; k <= dn; ++k) {
      const double w = a[nb.poly_index(k)];
      if (w == 0.0) continue;
      const auto& series = comp[k];
      for (int q = 0; q < static_cast<int>(series.size()); ++q)
        if (series[q] != 0.0) out[ob.poly_index(q)] += w * series[q];
    }
    for (const auto& atom : nb.divisor().finite_atoms()) {
      const double c = nearest_orig_atom((atom.first - t) / s);
      for (int k = 1; k <= atom.second; ++k) {
        const double w = a[nb.inverse_index(atom.first, k)];
        if (w == 0.0) continue;
        out[ob.inverse_index(c, k)] += w / std::pow(s, k);
      }
    }
    return RationalFn(original, center, halfspan, std::move(out));
  }

  // General map: x_star = T^{-1}(inf) is finite.
  const double ta = T.a(), tb = T.b(), tc = T.c(), td = T.d();
  const double x_star = -td / tc;

  // Polynomial part of the normalized basis: T_j(w), w = T(z).  Expand T_j in
  // monomials of w, then each w^i into inverse powers of (x_star - z).
  const int dn = nb.divisor().at_infinity();
  if (dn > 0) {
    const double A1 = ta / tc;
    const double B1 = tb - ta * td / tc;
    for (int j = 0; j <= dn; ++j) {
      const double w = a[nb.poly_index(j)];
      if (w == 0.0) continue;
      std::vector<double> unit(j + 1, 0.0);
      unit[j] = 1.0;
      const std::vector<double> mono = cheb::to_monomial(unit);
      for (int i = 0; i <= j; ++i) {
        if (mono[i] == 0.0) continue;
        for (int q = 0; q <= i; ++q) {
          const double coef = mono[i] * binom(i, q) * std::pow(A1, q) * std::pow(B1, i - q);
          const int m = i - q;
          if (m == 0) {
            out[ob.poly_index(0)] += w * coef;
          } else {
            const double v = coef / std::pow(tc, m) * ((m % 2) ? -1.0 : 1.0);
            out[ob.inverse_index(nearest_orig_atom(x_star), m)] += w * v;
          }
        }
      }
    }
  }

  for (const auto& atom : nb.divisor().finite_atoms()) {
    const double ct = atom.first;
    const double ca = ct * tc - ta;
    for (int k = 1; k <= atom.second; ++k) {
      const double w = a[nb.inverse_index(ct, k)];
      if (w == 0.0) continue;
      if (std::abs(ca) <= 1e-12 * (std::abs(ct * tc) + std::abs(ta))) {
        // This normalized atom is the image of the original point at infinity:
        // (ct - w)^{-k} = (tc z + td)^k / (ct td - tb)^k, a polynomial in z.
        const double den = std::pow(ct * td - tb, k);
        std::vector<double> mono(k + 1, 0.0);
        for (int i = 0; i <= k; ++i)
          mono[i] = binom(k, i) * std::pow(tc, i) * std::pow(td, k - i) / den;
        add_mono_poly(mono, w);
      } else {
        const ExtPoint corig = T.inverse()(ExtPoint::finite(ct));
        if (corig.inf) throw internal_error("pullback: unexpected atom at infinity");
        const double cv = nearest_orig_atom(corig.value);
        const double d1 = tc * cv + td;
        for (int q = 0; q <= k; ++q) {
          const double coef =
              binom(k, q) * std::pow(tc, q) * std::pow(d1, k - q) / std::pow(ca, k);
          const int m = k - q;
          if (m == 0) {
            out[ob.poly_index(0)] += w * coef;
          } else {
            out[ob.inverse_index(cv, m)] += w * coef * ((m % 2) ? -1.0 : 1.0);
          }
        }
      }
    }
  }

  return RationalFn(original, center, halfspan, std::move(out));
}

}  // namespace ratcheb
