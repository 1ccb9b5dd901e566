#include "ratcheb/solver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "ratcheb/errors.hpp"
#include "ratcheb/simplex.hpp"

namespace ratcheb {

namespace {

int auto_samples(int n, int requested) {
  if (requested > 0) return requested;
  // The design sketch samples 32 points per interval; that misses extrema
  // once n is moderately large on few intervals, so scale with n instead.
  return std::max(33, 8 * (n + 1));
}

double golden_max_abs(const std::function<double(double)>& f, double lo, double hi, double tol) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = std::abs(f(x1)), f2 = std::abs(f(x2));
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = std::abs(f(x2));
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = std::abs(f(x1));
    }
  }
  return f1 > f2 ? x1 : x2;
}

/// Cyclic sort key starting just after x_star.
struct CyclicKey {
  bool x_star_finite;
  double x_star;
  bool operator()(double p, double q) const {
    if (!x_star_finite) return p < q;
    const int gp = p > x_star ? 0 : 1;
    const int gq = q > x_star ? 0 : 1;
    if (gp != gq) return gp < gq;
    return p < q;
  }
};

}  // namespace

Problem make_problem(CompactSet set, PoleDivisor poles, ExtPoint x_star) {
  if (set.contains(x_star)) throw domain_error("make_problem: x_star lies in E");
  validate_divisor_off_set(poles, set);
  if (poles.degree() < 1) throw argument_error("make_problem: divisor must have positive degree");
  if (poles.degree() > 60) throw argument_error("make_problem: degrees above 60 are unsupported");
  const int d = poles.at(x_star);
  return Problem{std::move(set), std::move(poles), x_star, d};
}

bool is_constant_case(const Problem& p) {
  for (const auto& a : p.poles.atoms())
    if (a.second != 1) return false;
  // x_star and all atoms must occupy pairwise distinct gaps
  std::vector<Gap> seen;
  auto push_unique = [&](const ExtPoint& pt) {
    const Gap g = gap_of(p.set, pt);
    for (const auto& s : seen)
      if (s.left == g.left && s.right == g.right) return false;
    seen.push_back(g);
    return true;
  };
  if (!push_unique(p.x_star)) return false;
  for (const auto& a : p.poles.atoms())
    if (!push_unique(a.first)) return false;
  return true;
}

std::vector<std::pair<double, double>> find_local_maxima(
    const std::function<double(double)>& f, const std::function<double(double)>& df,
    const std::vector<Interval>& intervals, int samples_per_interval) {
  std::vector<std::pair<double, double>> out;
  const int S = std::max(5, samples_per_interval);
  for (const auto& iv : intervals) {
    const double scale = std::max({1.0, std::abs(iv.lo), std::abs(iv.hi)});
    const double xtol = 1e-13 * scale;
    out.emplace_back(iv.lo, f(iv.lo));
    out.emplace_back(iv.hi, f(iv.hi));
    std::vector<double> xs(S), ds(S);
    for (int i = 0; i < S; ++i) {
      xs[i] = iv.mid() - iv.half() * std::cos(M_PI * i / (S - 1));
      ds[i] = df(xs[i]);
    }
    for (int i = 0; i + 1 < S; ++i) {
      if (ds[i] == 0.0 && xs[i] > iv.lo) {
        out.emplace_back(xs[i], f(xs[i]));
      } else if (ds[i] * ds[i + 1] < 0.0) {
        const double x = golden_max_abs(f, xs[i], xs[i + 1], xtol);
        out.emplace_back(x, f(x));
      }
    }
  }
  std::sort(out.begin(), out.end());
  // drop duplicates within spacing tolerance, keeping the larger |f|
  std::vector<std::pair<double, double>> dedup;
  for (const auto& c : out) {
    const double tol = 1e-11 * std::max(1.0, std::abs(c.first));
    if (!dedup.empty() && c.first - dedup.back().first < tol) {
      if (std::abs(c.second) > std::abs(dedup.back().second)) dedup.back() = c;
    } else {
      dedup.push_back(c);
    }
  }
  return dedup;
}

std::pair<int, int> gap_edge_signs(const Problem& p) {
  const Gap g = gap_of(p.set, p.x_star);
  int sa = 0, sb = 0;
  for (const auto& atom : p.poles.atoms()) {
    if (in_cyclic_open(g.left, p.x_star, atom.first)) sa += atom.second;
    if (in_cyclic_left_closed(p.x_star, g.right, atom.first)) sb += atom.second;
  }
  return {(sa % 2) ? -1 : 1, (sb % 2) ? -1 : 1};
}

namespace {

/// Remez working state for the normalized problem (x_star = infinity).
class RemezEngine {
 public:
  RemezEngine(const NormalizedProblem& np, const SolveOptions& opts)
      : np_(np), opts_(opts), basis_(np.divisor, 0.0, 1.0), n_(np.divisor.degree()) {
    ell_raw_ = basis_.leading_functional();
  }

  int n() const { return n_; }
  const RationalBasis& basis() const { return basis_; }

  int sign_at(double x) const {
    int s = 0;
    for (const auto& a : np_.divisor.finite_atoms())
      if (x < a.first) s += a.second;
    return s;
  }
  // required sign of g = (-1)^{S_n} f at reference position j (1-based)
  int required_gsign(int j) const { return ((n_ + 1 - j) % 2) ? -1 : 1; }
  // sigma_j = (-1)^{n+1-j-S_n(x_j)}
  int sigma(int j, double x) const {
    const int e = n_ + 1 - j - sign_at(x);
    return (((e % 2) + 2) % 2) ? -1 : 1;
  }

  void maybe_condition(const Eigen::MatrixXd& system) {
    if (conditioned_) return;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(system);
    const double cond = svd.singularValues()(0) /
                        std::max(svd.singularValues()(svd.singularValues().size() - 1), 1e-300);
    if (cond <= opts_.cond_threshold) return;
    // Orthonormalize the basis against a Chebyshev sample of E.
    const int per = std::max(4, (4 * (n_ + 1)) / static_cast<int>(np_.set.size()) + 2);
    std::vector<double> xs;
    for (const auto& iv : np_.set.intervals())
      for (int i = 0; i < per; ++i)
        xs.push_back(iv.mid() - iv.half() * std::cos(M_PI * i / (per - 1)));
    Eigen::MatrixXd Phi(xs.size(), n_ + 1);
    std::vector<double> row(n_ + 1);
    for (std::size_t r = 0; r < xs.size(); ++r) {
      basis_.eval(xs[r], row.data());
      for (int k = 0; k <= n_; ++k) Phi(r, k) = row[k];
    }
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(Phi);
    Rfac_ = qr.matrixQR().topRows(n_ + 1).triangularView<Eigen::Upper>();
    for (int k = 0; k <= n_; ++k)
      if (Rfac_(k, k) == 0.0) throw numeric_error("solver: rank-deficient basis sample");
    conditioned_ = true;
  }

  Eigen::VectorXd effective_values(double x) const {
    Eigen::VectorXd v(n_ + 1);
    std::vector<double> raw(n_ + 1);
    basis_.eval(x, raw.data());
    for (int k = 0; k <= n_; ++k) v(k) = raw[k];
    if (conditioned_) v = Rfac_.transpose().triangularView<Eigen::Lower>().solve(v);
    return v;
  }
  Eigen::VectorXd effective_derivs(double x) const {
    Eigen::VectorXd v(n_ + 1);
    std::vector<double> raw(n_ + 1);
    basis_.eval_deriv(x, raw.data());
    for (int k = 0; k <= n_; ++k) v(k) = raw[k];
    if (conditioned_) v = Rfac_.transpose().triangularView<Eigen::Lower>().solve(v);
    return v;
  }
  Eigen::VectorXd effective_functional() const {
    Eigen::VectorXd l(n_ + 1);
    for (int k = 0; k <= n_; ++k) l(k) = ell_raw_[k];
    if (conditioned_) l = Rfac_.transpose().triangularView<Eigen::Lower>().solve(l);
    return l;
  }
  std::vector<double> raw_coeffs(const Eigen::VectorXd& b) const {
    Eigen::VectorXd a = b;
    if (conditioned_) a = Rfac_.triangularView<Eigen::Upper>().solve(b);
    return std::vector<double>(a.data(), a.data() + a.size());
  }

  // Solve the (n+2) x (n+2) reference system; returns (coeffs, h).
  std::pair<Eigen::VectorXd, double> solve_reference(const std::vector<double>& ref,
                                                     bool allow_condition) {
    Eigen::MatrixXd A(n_ + 2, n_ + 2);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_ + 2);
    for (int j = 0; j < n_ + 1; ++j) {
      A.block(j, 0, 1, n_ + 1) = effective_values(ref[j]).transpose();
      A(j, n_ + 1) = -static_cast<double>(sigma(j + 1, ref[j]));
    }
    A.block(n_ + 1, 0, 1, n_ + 1) = effective_functional().transpose();
    A(n_ + 1, n_ + 1) = 0.0;
    rhs(n_ + 1) = 1.0;
    if (allow_condition && !conditioned_) {
      maybe_condition(A);
      if (conditioned_) return solve_reference(ref, false);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    if (!qr.isInvertible()) throw numeric_error("solver: singular reference system");
    Eigen::VectorXd sol = qr.solve(rhs);
    return {sol.head(n_ + 1), sol(n_ + 1)};
  }

  const NormalizedProblem& np() const { return np_; }
  const SolveOptions& opts() const { return opts_; }

 private:
  const NormalizedProblem& np_;
  const SolveOptions& opts_;
  RationalBasis basis_;
  int n_;
  std::vector<double> ell_raw_;
  bool conditioned_ = false;
  Eigen::MatrixXd Rfac_;
};

std::vector<double> initial_reference(const CompactSet& E, int n, unsigned jitter_seed) {
  const int total = n + 1;
  const auto& ivs = E.intervals();
  double len = 0.0;
  for (const auto& iv : ivs) len += iv.hi - iv.lo;
  std::vector<int> counts(ivs.size(), 0);
  std::vector<std::pair<double, std::size_t>> rem;
  int assigned = 0;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const double share = total * (ivs[i].hi - ivs[i].lo) / len;
    counts[i] = static_cast<int>(std::floor(share));
    assigned += counts[i];
    rem.emplace_back(share - counts[i], i);
  }
  std::sort(rem.rbegin(), rem.rend());
  for (int k = 0; k < total - assigned; ++k) counts[rem[k % rem.size()].second] += 1;

  std::vector<double> ref;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    const int m = counts[i];
    if (m == 0) continue;
    if (m == 1) {
      ref.push_back(ivs[i].mid());
    } else {
      for (int q = 0; q < m; ++q)
        ref.push_back(ivs[i].mid() - ivs[i].half() * std::cos(M_PI * q / (m - 1)));
    }
  }
  std::sort(ref.begin(), ref.end());

  if (jitter_seed != 0) {
    std::mt19937 rng(jitter_seed);
    std::uniform_real_distribution<double> u(-0.3, 0.3);
    for (std::size_t i = 0; i < ref.size(); ++i) {
      double room = 1e300;
      if (i > 0) room = std::min(room, ref[i] - ref[i - 1]);
      if (i + 1 < ref.size()) room = std::min(room, ref[i + 1] - ref[i]);
      double x = ref[i] + u(rng) * 0.5 * std::min(room, 1.0);
      // keep the point inside E
      bool inside = false;
      for (const auto& iv : ivs)
        if (iv.contains(x)) inside = true;
      if (inside) ref[i] = x;
    }
    std::sort(ref.begin(), ref.end());
  }
  return ref;
}

struct ExchangeResult {
  std::vector<double> ref;
  bool progressed = false;
};

ExchangeResult exchange_reference(const RemezEngine& eng, const std::vector<double>& old_ref,
                                  const std::vector<std::pair<double, double>>& maxima,
                                  double level) {
  const int n = eng.n();
  struct Cand {
    double x, fx;
    int gsign;
  };
  std::vector<Cand> cands;
  for (const auto& m : maxima) {
    if (std::abs(m.second) < std::abs(level) * (1.0 - 1e-9)) continue;
    const double g = ((eng.sign_at(m.first) % 2) ? -1.0 : 1.0) * m.second;
    cands.push_back({m.first, m.second, g >= 0.0 ? 1 : -1});
  }
  if (cands.empty()) return {old_ref, false};

  // collapse runs of equal g-sign keeping the largest |f| (leftmost on ties)
  std::vector<Cand> runs;
  for (const auto& c : cands) {
    if (!runs.empty() && runs.back().gsign == c.gsign) {
      if (std::abs(c.fx) > std::abs(runs.back().fx)) runs.back() = c;
    } else {
      runs.push_back(c);
    }
  }

  std::size_t gmax = 0;
  for (std::size_t i = 1; i < runs.size(); ++i)
    if (std::abs(runs[i].fx) > std::abs(runs[gmax].fx)) gmax = i;

  const int L = static_cast<int>(runs.size());
  if (L >= n + 1) {
    // windows of n+1 consecutive alternating candidates whose last entry has
    // the required positive g-sign
    int best_i = -1;
    double best_score = -1.0;
    for (int i = 0; i + n < L; ++i) {
      if (runs[i + n].gsign != 1) continue;
      if (gmax < static_cast<std::size_t>(i) || gmax > static_cast<std::size_t>(i + n)) continue;
      double score = 1e300;
      for (int q = i; q <= i + n; ++q) score = std::min(score, std::abs(runs[q].fx));
      if (score > best_score) {
        best_score = score;
        best_i = i;
      }
    }
    if (best_i >= 0) {
      std::vector<double> ref(n + 1);
      for (int q = 0; q <= n; ++q) ref[q] = runs[best_i + q].x;
      const bool progressed = (ref != old_ref);
      return {std::move(ref), progressed};
    }
  }

  // single-point fallback: swap the global maximum into the old reference,
  // preferring the neighbor whose required g-sign matches
  std::vector<double> ref = old_ref;
  const Cand& gm = runs[gmax];
  (void)level;
  if (gm.x < ref.front()) {
    ref.front() = gm.x;
  } else if (gm.x > ref.back()) {
    ref.back() = gm.x;
  } else {
    for (std::size_t i = 0; i + 1 < ref.size(); ++i) {
      if (ref[i] <= gm.x && gm.x <= ref[i + 1]) {
        const int need_i = eng.required_gsign(static_cast<int>(i) + 1);
        if (gm.gsign == need_i)
          ref[i] = gm.x;
        else
          ref[i + 1] = gm.x;
        break;
      }
    }
  }
  std::sort(ref.begin(), ref.end());
  const bool progressed = (ref != old_ref);
  return {std::move(ref), progressed};
}

Solution solve_constant_case(const Problem& p) {
  const double center = p.set.hull_center();
  const double half = p.set.hull_half();
  RationalFn F = RationalFn::constant(p.poles, center, half, 1.0);

  // Canonical alternation set: the edges of the x_star gap plus one point of
  // E between consecutive poles in cyclic order.
  const Gap g0 = gap_of(p.set, p.x_star);
  std::vector<AlternationPoint> alt;
  alt.push_back({g0.right.value, 1});
  std::vector<ExtPoint> atoms;
  for (const auto& a : p.poles.atoms()) atoms.push_back(a.first);
  std::sort(atoms.begin(), atoms.end(), [&](const ExtPoint& x, const ExtPoint& y) {
    // cyclic order from x_star via the membership predicate
    if (x == y) return false;
    return in_cyclic_open(p.x_star, y, x);
  });
  for (std::size_t l = 0; l + 1 < atoms.size(); ++l) {
    bool placed = false;
    for (const auto& iv : p.set.intervals()) {
      const ExtPoint mid = ExtPoint::finite(iv.mid());
      if (in_cyclic_open(atoms[l], atoms[l + 1], mid)) {
        alt.push_back({mid.value, 1});
        placed = true;
        break;
      }
    }
    if (!placed) throw internal_error("constant case: no set point between consecutive poles");
  }
  alt.push_back({g0.left.value, 1});

  Solution s{std::move(F), 1.0, std::move(alt), ZeroDivisor{}, true, 0, 0.0, Mobius::identity()};
  s.zeros = s.F.generalized_zeros();
  return s;
}

}  // namespace

Solution solve(const Problem& p, const SolveOptions& opts) {
  if (is_constant_case(p)) return solve_constant_case(p);

  const NormalizedProblem np = normalize_problem(p.set, p.poles, p.x_star);
  const double kappa = leading_factor(np.map, p.x_star);
  RemezEngine eng(np, opts);
  const int n = eng.n();

  std::vector<double> ref = initial_reference(np.set, n, opts.init_jitter_seed);
  if (static_cast<int>(ref.size()) != n + 1)
    throw internal_error("solver: reference initialization size mismatch");

  Eigen::VectorXd bvec;
  double h = 0.0;
  double norm = 0.0;
  double defect = 1e300;
  int iter = 0;
  std::vector<std::pair<double, double>> maxima;
  const int spi = auto_samples(n, opts.samples_per_interval);

  int redistribute_budget = n;
  for (iter = 1; iter <= opts.max_iter; ++iter) {
    auto [bb, hh] = eng.solve_reference(ref, iter == 1);
    bvec = bb;
    h = hh;
    if (h <= 0.0) {
      // Theory gives h > 0 for any admissible reference; treat a nonpositive
      // level as a misplaced reference and move one point across the nearest
      // pole before giving up.
      if (redistribute_budget-- <= 0)
        throw numeric_error("solver: nonpositive reference level persists");
      ref = initial_reference(np.set, n, opts.init_jitter_seed + 17 * (n - redistribute_budget));
      continue;
    }

    auto f = [&](double x) { return eng.effective_values(x).dot(bvec); };
    auto df = [&](double x) { return eng.effective_derivs(x).dot(bvec); };
    maxima = find_local_maxima(f, df, np.set.intervals(), spi);
    norm = 0.0;
    for (const auto& m : maxima) norm = std::max(norm, std::abs(m.second));
    defect = (norm - h) / h;
    if (defect <= opts.tol) break;

    ExchangeResult ex = exchange_reference(eng, ref, maxima, h);
    if (!ex.progressed) {
      if (defect <= 1e3 * opts.tol) break;  // stalled at numerical floor
      throw nonconvergence_error("solver: exchange stalled", defect);
    }
    ref = std::move(ex.ref);
  }
  if (iter > opts.max_iter)
    throw nonconvergence_error("solver: iteration cap exceeded", defect);

  // Normalized extremizer F = f / ||f||; original-chart value m = kappa^d / ||f||.
  std::vector<double> raw = eng.raw_coeffs(bvec);
  for (double& c : raw) c /= norm;
  RationalFn F_norm(np.divisor, 0.0, 1.0, std::move(raw));
  const double m_value = std::pow(kappa, p.d) / norm;

  RationalFn F = pullback_through(F_norm, np.map, p.poles, p.set.hull_center(),
                                  p.set.hull_half());

  const Mobius inv = np.map.inverse();
  std::vector<AlternationPoint> alt;
  for (int j = 0; j < n + 1; ++j) {
    const ExtPoint xo = inv(ExtPoint::finite(ref[j]));
    if (xo.inf) throw internal_error("solver: alternation point mapped to infinity");
    alt.push_back({xo.value, eng.sigma(j + 1, ref[j])});
  }

  // Generalized zeros in the normalized chart, mapped back.
  ZeroDivisor zeros_norm = F_norm.generalized_zeros(opts.eps_pole);
  ZeroDivisor zeros;
  for (const auto& a : zeros_norm.atoms()) {
    ExtPoint back = inv(a.first);
    if (!back.inf) {
      // snap onto original atoms (pole-order reductions map exactly there)
      for (const auto& atom : p.poles.finite_atoms())
        if (std::abs(back.value - atom.first) <= 1e-7 * (1.0 + std::abs(atom.first)))
          back = ExtPoint::finite(atom.first);
    }
    zeros.add(back, a.second);
  }

  return Solution{std::move(F), m_value, std::move(alt), std::move(zeros),
                  false,        iter,    defect,          np.map};
}

AlternationReport verify_alternation(const RationalFn& F, const Problem& p, double level_tol) {
  const int n = p.poles.degree();
  const int spi = auto_samples(n, 0);
  auto f = [&](double x) { return F.eval(x); };
  auto df = [&](double x) { return F.eval_deriv(x); };
  auto maxima = find_local_maxima(f, df, p.set.intervals(), spi);

  struct Cand {
    double x, fx;
    int gsign;
  };
  std::vector<Cand> cands;
  for (const auto& m : maxima) {
    if (std::abs(m.second) < 1.0 - level_tol) continue;
    const int S = sign_function(p.poles, p.x_star, ExtPoint::finite(m.first));
    const double g = ((S % 2) ? -1.0 : 1.0) * m.second;
    cands.push_back({m.first, m.second, g >= 0.0 ? 1 : -1});
  }
  CyclicKey key{!p.x_star.inf, p.x_star.inf ? 0.0 : p.x_star.value};
  std::sort(cands.begin(), cands.end(),
            [&](const Cand& a, const Cand& b) { return key(a.x, b.x); });

  std::vector<Cand> runs;
  for (const auto& c : cands) {
    if (!runs.empty() && runs.back().gsign == c.gsign) {
      if (std::abs(c.fx) > std::abs(runs.back().fx)) runs.back() = c;
    } else {
      runs.push_back(c);
    }
  }
  if (!runs.empty() && runs.back().gsign != 1) runs.pop_back();

  AlternationReport rep;
  rep.size = static_cast<int>(runs.size());
  const int msize = rep.size;
  for (int j = 1; j <= msize; ++j) {
    const auto& c = runs[j - 1];
    const int S = sign_function(p.poles, p.x_star, ExtPoint::finite(c.x));
    const int e = msize - j - S;
    const double sigma = (((e % 2) + 2) % 2) ? -1.0 : 1.0;
    rep.max_level_residual = std::max(rep.max_level_residual, std::abs(std::abs(c.fx) - 1.0));
    rep.max_sign_residual = std::max(rep.max_sign_residual, std::abs(c.fx - sigma));
    rep.points.push_back({c.x, c.fx >= 0.0 ? 1 : -1});
  }

  // thm bound: at most n + 1 - D^0(x_star) alternation points for any real F
  int d0_at_xstar = 0;
  try {
    const ZeroDivisor z = F.generalized_zeros();
    for (const auto& a : z.atoms()) {
      if (a.first == p.x_star) {
        d0_at_xstar += a.second;
      } else if (!a.first.inf && !p.x_star.inf &&
                 std::abs(a.first.value - p.x_star.value) <=
                     1e-7 * (1.0 + std::abs(p.x_star.value))) {
        d0_at_xstar += a.second;
      }
    }
  } catch (const error&) {
    d0_at_xstar = 0;  // zero function etc.; the bound stays trivial
  }
  rep.bound = n + 1 - d0_at_xstar;
  rep.bound_respected = rep.size <= rep.bound;
  rep.pass = (rep.size == n + 1) && rep.max_sign_residual <= 2.0 * level_tol;
  return rep;
}

LpOracleResult solve_lp_oracle(const Problem& p, int grid_size) {
  if (grid_size < 2 || grid_size > 10000)
    throw argument_error("solve_lp_oracle: grid_size must be in [2, 10^4]");

  const NormalizedProblem np = normalize_problem(p.set, p.poles, p.x_star);
  const double kappa = leading_factor(np.map, p.x_star);
  const int n = np.divisor.degree();
  RationalBasis basis(np.divisor, 0.0, 1.0);

  // uniform grid per interval, proportional to length, endpoints included
  const auto& ivs = np.set.intervals();
  double len = 0.0;
  for (const auto& iv : ivs) len += iv.hi - iv.lo;
  std::vector<double> xs;
  int remaining = grid_size;
  for (std::size_t i = 0; i < ivs.size(); ++i) {
    int cnt = (i + 1 == ivs.size())
                  ? remaining
                  : std::max(2, static_cast<int>(std::lround(grid_size * (ivs[i].hi - ivs[i].lo) / len)));
    cnt = std::min(cnt, remaining);
    remaining -= cnt;
    for (int q = 0; q < cnt; ++q)
      xs.push_back(cnt == 1 ? ivs[i].mid() : ivs[i].lo + (ivs[i].hi - ivs[i].lo) * q / (cnt - 1.0));
  }
  const int G = static_cast<int>(xs.size());

  // QR-orthonormalized basis samples for numerical sanity
  Eigen::MatrixXd Phi(G, n + 1);
  std::vector<double> row(n + 1);
  for (int i = 0; i < G; ++i) {
    basis.eval(xs[i], row.data());
    for (int k = 0; k <= n; ++k) Phi(i, k) = row[k];
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(Phi);
  Eigen::MatrixXd R = qr.matrixQR().topRows(n + 1).triangularView<Eigen::Upper>();
  for (int k = 0; k <= n; ++k)
    if (R(k, k) == 0.0) throw numeric_error("solve_lp_oracle: rank-deficient grid sample");
  Eigen::MatrixXd Psi = R.transpose().triangularView<Eigen::Lower>().solve(Phi.transpose());
  // Psi is (n+1) x G with Psi(k, i) = psi_k(x_i)

  std::vector<double> lraw = basis.leading_functional();
  Eigen::VectorXd lvec(n + 1);
  for (int k = 0; k <= n; ++k) lvec(k) = lraw[k];
  Eigen::VectorXd lpsi = R.transpose().triangularView<Eigen::Lower>().solve(lvec);

  // dual LP: maximize lambda s.t. Psi (u - v) = lambda * lpsi, sum(u + v) = 1
  const int ncols = 2 * G + 2;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n + 2, ncols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 2);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(ncols);
  for (int k = 0; k <= n; ++k) {
    for (int i = 0; i < G; ++i) {
      A(k, i) = Psi(k, i);
      A(k, G + i) = -Psi(k, i);
    }
    A(k, 2 * G) = -lpsi(k);
    A(k, 2 * G + 1) = lpsi(k);
  }
  for (int i = 0; i < 2 * G; ++i) A(n + 1, i) = 1.0;
  b(n + 1) = 1.0;
  c(2 * G) = 1.0;
  c(2 * G + 1) = -1.0;

  lp::Result lpres = lp::simplex_maximize(A, b, c);
  if (lpres.status != lp::Status::optimal)
    throw internal_error("solve_lp_oracle: LP did not reach an optimum");
  double h = lpres.objective;

  // active grid points with their signs from the optimal basis
  std::vector<std::pair<double, int>> active;
  for (int idx : lpres.basis) {
    if (idx < G)
      active.emplace_back(xs[idx], 1);
    else if (idx < 2 * G)
      active.emplace_back(xs[idx - G], -1);
  }
  std::sort(active.begin(), active.end());

  LpOracleResult out;
  out.iterations = lpres.iterations;
  if (static_cast<int>(active.size()) == n + 1) {
    Eigen::MatrixXd S(n + 2, n + 2);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n + 2);
    for (int j = 0; j <= n; ++j) {
      Eigen::VectorXd vals = R.transpose().triangularView<Eigen::Lower>().solve([&] {
        Eigen::VectorXd v(n + 1);
        basis.eval(active[j].first, row.data());
        for (int k = 0; k <= n; ++k) v(k) = row[k];
        return v;
      }());
      S.block(j, 0, 1, n + 1) = vals.transpose();
      S(j, n + 1) = -static_cast<double>(active[j].second);
    }
    S.block(n + 1, 0, 1, n + 1) = lpsi.transpose();
    S(n + 1, n + 1) = 0.0;
    rhs(n + 1) = 1.0;
    Eigen::VectorXd sol = S.colPivHouseholderQr().solve(rhs);
    const double h2 = std::abs(sol(n + 1));
    if (std::isfinite(h2) && h2 > 0.0) h = h2;
    Eigen::VectorXd a_eff = sol.head(n + 1);
    Eigen::VectorXd a_raw = R.triangularView<Eigen::Upper>().solve(a_eff);
    out.coeffs.assign(a_raw.data(), a_raw.data() + n + 1);
  }
  out.level = h;
  out.m = std::pow(kappa, p.d) / h;
  return out;
}

}  // namespace ratcheb
