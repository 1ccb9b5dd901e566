#include "ratcheb/green.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "ratcheb/errors.hpp"
#include "ratcheb/geometry.hpp"
#include "ratcheb/quadrature.hpp"

namespace ratcheb {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Upper-branch square root of R restricted to the real axis, excluding the
/// two given endpoint indices; always real and positive between them.
double abs_sqrt_excluding(const std::vector<double>& e, double t, std::size_t i1, std::size_t i2) {
  double p = 1.0;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i == i1 || i == i2) continue;
    p *= std::sqrt(std::abs(t - e[i]));
  }
  return p;
}
}  // namespace

GreenModel::GreenModel(CompactSet set, ExtPoint pole)
    : set_(std::move(set)), pole_(pole), endpoints_(set_.endpoints()) {
  if (set_.contains_infinity()) throw domain_error("GreenModel: set must be bounded");
  if (set_.contains(pole_)) throw domain_error("GreenModel: pole lies on E");
  center_ = set_.hull_center();
  half_ = set_.hull_half();
  const double scale = 2.0 * half_;
  for (std::size_t j = 0; j + 1 < set_.size(); ++j) {
    const double len = set_.intervals()[j + 1].lo - set_.intervals()[j].hi;
    if (len < 1e-9 * scale) throw domain_error("GreenModel: degenerate (near-touching) gap");
  }
  if (!pole_.inf) {
    for (double e : endpoints_)
      if (pole_.value == e) throw domain_error("GreenModel: pole at a gap edge");
  }

  const int g = static_cast<int>(set_.size()) - 1;
  const int dim = g + 1;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(dim);

  // Index of the bounded gap containing a finite pole, or -1.
  int pole_gap = -1;
  if (!pole_.inf) {
    for (int j = 0; j < g; ++j) {
      if (set_.intervals()[j].hi < pole_.value && pole_.value < set_.intervals()[j + 1].lo) {
        pole_gap = j;
        break;
      }
    }
  }

  auto tau = [&](double t) { return (t - center_) / half_; };

  // Gap-period rows.  With t = mid + h cos(theta) the weight sqrt(R) absorbs
  // h sin(theta), leaving smooth integrands in theta.
  for (int j = 0; j < g; ++j) {
    const double ga = set_.intervals()[j].hi;
    const double gb = set_.intervals()[j + 1].lo;
    const std::size_t ia = 2 * j + 1, ib = 2 * j + 2;
    const double mid = 0.5 * (ga + gb), h = 0.5 * (gb - ga);

    auto phi = [&](double t, int k) {
      return std::pow(tau(t), k) / abs_sqrt_excluding(endpoints_, t, ia, ib);
    };

    std::vector<double> row(dim, 0.0);
    std::vector<double> prev(dim, 0.0);
    bool converged = false;
    for (int nq = 16; nq <= (1 << 14) && !converged; nq *= 2) {
      std::fill(row.begin(), row.end(), 0.0);
      const double hh = M_PI / nq;
      for (int q = 0; q < nq; ++q) {
        const double theta = hh * (q + 0.5);
        const double t = mid + h * std::cos(theta);
        if (j == pole_gap) {
          const double dt = t - pole_.value;
          for (int k = 0; k < dim; ++k) {
            double val;
            if (std::abs(dt) > 1e-9 * h) {
              val = (phi(t, k) - phi(pole_.value, k)) / dt;
            } else {
              const double eps = 1e-6 * h;
              val = (phi(pole_.value + eps, k) - phi(pole_.value - eps, k)) / (2.0 * eps);
            }
            row[k] += val;
          }
        } else {
          const double fac = pole_.inf ? 1.0 : 1.0 / (t - pole_.value);
          for (int k = 0; k < dim; ++k) row[k] += phi(t, k) * fac;
        }
      }
      double mx = 0.0, dmax = 0.0;
      for (int k = 0; k < dim; ++k) {
        row[k] *= hh;
        mx = std::max(mx, std::abs(row[k]));
        dmax = std::max(dmax, std::abs(row[k] - prev[k]));
      }
      if (nq > 16 && dmax <= 1e-13 * (1.0 + mx)) converged = true;
      prev = row;
    }
    for (int k = 0; k < dim; ++k) A(j, k) = row[k];
  }

  // Normalization row.
  if (pole_.inf) {
    // M monic of degree g in t: coefficient of t^g is m_g / half^g.
    A(g, g) = 1.0;
    b(g) = std::pow(half_, g);
  } else {
    const double tc = tau(pole_.value);
    for (int k = 0; k < dim; ++k) A(g, k) = std::pow(tc, k);
    // M(c) = -sqrt(R(c)) on the upper branch (real for real c off E).
    std::complex<double> s = 1.0;
    for (double e : endpoints_) s *= std::sqrt(std::complex<double>(pole_.value - e, 0.0));
    b(g) = -s.real();
  }

  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) throw numeric_error("GreenModel: singular period system");
  Eigen::VectorXd sol = lu.solve(b);
  m_.assign(sol.data(), sol.data() + dim);

  period_residuals_.assign(std::max(g, 0), 0.0);
  for (int j = 0; j < g; ++j) {
    double r = 0.0;
    for (int k = 0; k < dim; ++k) r += A(j, k) * m_[k];
    period_residuals_[j] = std::abs(r);
  }
}

double GreenModel::m_at(double tau_arg) const {
  double v = 0.0;
  for (std::size_t k = m_.size(); k-- > 0;) v = v * tau_arg + m_[k];
  return v;
}

std::complex<double> GreenModel::sqrtR(const std::complex<double>& z) const {
  std::complex<double> p = 1.0;
  for (double e : endpoints_) p *= std::sqrt(z - e);
  return p;
}

std::complex<double> GreenModel::sqrtR_excluding(const std::complex<double>& z,
                                                 std::size_t skip) const {
  std::complex<double> p = 1.0;
  for (std::size_t i = 0; i < endpoints_.size(); ++i)
    if (i != skip) p *= std::sqrt(z - endpoints_[i]);
  return p;
}

std::complex<double> GreenModel::integrand(const std::complex<double>& t) const {
  std::complex<double> mval = 0.0;
  const std::complex<double> ta = (t - center_) / half_;
  for (std::size_t k = m_.size(); k-- > 0;) mval = mval * ta + m_[k];
  std::complex<double> den = sqrtR(t);
  if (!pole_.inf) den *= (t - pole_.value);
  return mval / den;
}

std::complex<double> GreenModel::leg_from_endpoint(std::size_t ei, std::complex<double> z1) const {
  // t = e + (z1 - e) s^2 removes the sqrt singularity at the endpoint; the
  // s factors from dt and from sqrt(t - e) = s sqrt(z1 - e) cancel exactly.
  const double e = endpoints_[ei];
  const std::complex<double> d = z1 - e;
  const std::complex<double> sq = std::sqrt(d);
  auto g = [&](std::complex<double> s) {
    const std::complex<double> t = e + d * (s * s);
    std::complex<double> mval = 0.0;
    const std::complex<double> ta = (t - center_) / half_;
    for (std::size_t k = m_.size(); k-- > 0;) mval = mval * ta + m_[k];
    std::complex<double> v = 2.0 * sq * mval / sqrtR_excluding(t, ei);
    if (!pole_.inf) v /= (t - pole_.value);
    return v;
  };
  return quad::integrate_segment(g, 0.0, 1.0, 1e-13);
}

double GreenModel::eval(std::complex<double> z) const {
  if (!pole_.inf && z == std::complex<double>(pole_.value, 0.0)) return kInf;
  if (z.imag() < 0.0) z = std::conj(z);
  const double scale = std::max(1.0, 2.0 * half_);

  // endpoint: G vanishes there
  for (double e : endpoints_)
    if (std::abs(z - std::complex<double>(e, 0.0)) <= 1e-13 * scale) return 0.0;

  const bool is_real = (z.imag() == 0.0);
  if (is_real) {
    const double x = z.real();
    // candidate base endpoints whose straight real segment to x is free of
    // the pole (crossing E itself is harmless for the real part)
    std::vector<std::size_t> cands;
    double best = kInf;
    std::size_t nearest = 0;
    for (std::size_t i = 0; i < endpoints_.size(); ++i) {
      const double dist = std::abs(x - endpoints_[i]);
      if (dist < best) {
        best = dist;
        nearest = i;
      }
    }
    // try nearest first, then the other edge of the same gap when inside one
    cands.push_back(nearest);
    for (std::size_t i = 0; i < endpoints_.size(); ++i)
      if (i != nearest) cands.push_back(i);
    std::sort(cands.begin() + 1, cands.end(), [&](std::size_t a2, std::size_t b2) {
      return std::abs(x - endpoints_[a2]) < std::abs(x - endpoints_[b2]);
    });
    for (std::size_t ei : cands) {
      const double e = endpoints_[ei];
      // no branch point strictly inside the segment other than handled ones
      bool crosses_endpoint = false;
      for (std::size_t i = 0; i < endpoints_.size(); ++i) {
        if (i == ei) continue;
        const double p = endpoints_[i];
        if ((e < p && p < x) || (x < p && p < e)) crosses_endpoint = true;
      }
      if (crosses_endpoint) continue;
      if (!pole_.inf) {
        const double c = pole_.value;
        if ((e < c && c < x) || (x < c && c < e)) continue;
      }
      return leg_from_endpoint(ei, z).real();
    }
  }

  // Polyline through the upper half-plane: up from the nearest endpoint,
  // across at height H, then down to z.
  std::size_t nearest = 0;
  double best = kInf;
  for (std::size_t i = 0; i < endpoints_.size(); ++i) {
    const double dist = std::abs(z - std::complex<double>(endpoints_[i], 0.0));
    if (dist < best) {
      best = dist;
      nearest = i;
    }
  }
  const double H = std::max(0.5 * half_, z.imag());
  const std::complex<double> p0(endpoints_[nearest], 0.0);
  const std::complex<double> p1(endpoints_[nearest], H);
  const std::complex<double> p2(z.real(), H);
  std::complex<double> total = leg_from_endpoint(nearest, p1);
  auto f = [&](std::complex<double> t) { return integrand(t); };
  if (p2 != p1) total += quad::integrate_segment(f, p1, p2, 1e-13);
  if (z != p2) total += quad::integrate_segment(f, p2, z, 1e-13);
  return total.real();
}

double GreenModel::density(double x) const {
  if (!set_.contains(x)) throw argument_error("density: point must lie in E");
  double p = 1.0;
  for (double e : endpoints_) p *= std::sqrt(std::abs(x - e));
  double v = std::abs(m_at((x - center_) / half_)) / (M_PI * p);
  if (!pole_.inf) v /= std::abs(x - pole_.value);
  return v;
}

double GreenModel::harmonic_measure(double lo, double hi) const {
  if (!(lo <= hi)) throw argument_error("harmonic_measure: empty interval");
  const double slack = 1e-9 * std::max(1.0, 2.0 * half_);
  double total = 0.0;
  double covered = 0.0;
  for (const auto& iv : set_.intervals()) {
    const double a = std::max(lo, iv.lo), b2 = std::min(hi, iv.hi);
    if (a >= b2) continue;
    covered += b2 - a;
    const double mid = 0.5 * (a + b2), h = 0.5 * (b2 - a);
    auto f = [&](double theta) {
      double t = mid + h * std::cos(theta);
      // keep nodes strictly interior against rounding at interval edges
      const double eps = 1e-15 * std::max(1.0, std::abs(t));
      t = std::min(std::max(t, iv.lo + eps), iv.hi - eps);
      return density(t) * h * std::sin(theta);
    };
    total += quad::integrate_theta(f, 1e-12);
  }
  if (covered + slack < hi - lo)
    throw argument_error("harmonic_measure: interval not contained in E");
  return total;
}

double GreenModel::total_mass() const {
  double s = 0.0;
  for (const auto& iv : set_.intervals()) s += harmonic_measure(iv.lo, iv.hi);
  return s;
}

std::vector<double> GreenModel::critical_points() const {
  const int g = static_cast<int>(m_.size()) - 1;
  int deg = g;
  while (deg > 0 && m_[deg] == 0.0) --deg;
  if (deg < 1) return {};
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 1; i < deg; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < deg; ++i) C(0, i) = -m_[deg - 1 - i] / m_[deg];
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  std::vector<double> out;
  for (int i = 0; i < deg; ++i) {
    const auto ev = es.eigenvalues()[i];
    if (std::abs(ev.imag()) < 1e-8 * std::max(1.0, std::abs(ev.real())))
      out.push_back(center_ + half_ * ev.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {
struct CacheKey {
  std::vector<double> endpoints;
  bool inf;
  double pole;
  bool operator<(const CacheKey& o) const {
    if (endpoints != o.endpoints) return endpoints < o.endpoints;
    if (inf != o.inf) return inf < o.inf;
    return pole < o.pole;
  }
};
}  // namespace

std::shared_ptr<const GreenModel> green_model(const CompactSet& E, const ExtPoint& pole) {
  static std::map<CacheKey, std::shared_ptr<const GreenModel>> cache;
  static std::mutex mtx;
  CacheKey key{E.endpoints(), pole.inf, pole.inf ? 0.0 : pole.value};
  {
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto model = std::make_shared<const GreenModel>(E, pole);
  std::lock_guard<std::mutex> lock(mtx);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  cache.emplace(std::move(key), model);
  return model;
}

double green_eval(const CompactSet& E, const ExtPoint& pole, std::complex<double> z) {
  return green_model(E, pole)->eval(z);
}

double green_sum(const CompactSet& E, const std::vector<WeightedAtom>& atoms,
                 std::complex<double> z) {
  double s = 0.0;
  for (const auto& a : atoms) {
    if (a.w == 0.0) continue;
    if (E.contains(a.c)) throw domain_error("green_sum: atom lies on E");
    s += a.w * green_model(E, a.c)->eval(z);
  }
  return s;
}

std::vector<Interval> set_difference(const CompactSet& E2, const CompactSet& E1) {
  std::vector<Interval> out;
  for (const auto& iv : E2.intervals()) {
    double lo = iv.lo;
    for (const auto& jv : E1.intervals()) {
      if (jv.hi <= lo || jv.lo >= iv.hi) continue;
      if (jv.lo > lo) out.push_back(Interval{lo, jv.lo});
      lo = std::max(lo, jv.hi);
    }
    if (lo < iv.hi) out.push_back(Interval{lo, iv.hi});
  }
  return out;
}

double koosis_residual(const CompactSet& E1, const CompactSet& E2, const ExtPoint& c,
                       std::complex<double> z) {
  // containment check
  for (const auto& iv : E1.intervals()) {
    bool inside = false;
    for (const auto& jv : E2.intervals())
      if (jv.lo <= iv.lo + 1e-12 && iv.hi <= jv.hi + 1e-12) inside = true;
    if (!inside) throw argument_error("koosis_residual: E1 must be contained in E2");
  }
  if (E2.contains(c)) throw domain_error("koosis_residual: pole lies on E2");

  const auto m1 = green_model(E1, c);
  const auto m2 = green_model(E2, c);
  const double lhs = m1->eval(z) - m2->eval(z);

  double rhs = 0.0;
  for (const auto& piece : set_difference(E2, E1)) {
    if (piece.hi - piece.lo < 1e-13) continue;
    const double mid = piece.mid(), h = piece.half();
    auto f = [&](double theta) {
      const double x = mid + h * std::cos(theta);
      const double g1 = GreenModel(E1, ExtPoint::finite(x)).eval(z);
      return g1 * m2->density(x) * h * std::sin(theta);
    };
    // modest-order doubling: the integrand requires a Green model per node
    double prev = 0.0;
    bool have_prev = false;
    double val = 0.0;
    for (int nq = 8; nq <= 512; nq *= 2) {
      double s = 0.0;
      const double hh = M_PI / nq;
      for (int q2 = 0; q2 < nq; ++q2) s += f(hh * (q2 + 0.5));
      val = s * hh;
      if (have_prev && std::abs(val - prev) <= 1e-8 * (1.0 + std::abs(val))) break;
      prev = val;
      have_prev = true;
    }
    rhs += val;
  }
  return std::abs(lhs - rhs);
}

}  // namespace ratcheb
