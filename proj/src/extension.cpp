#include "ratcheb/extension.hpp"

#include <algorithm>
#include <cmath>

#include "ratcheb/cheb.hpp"
#include "ratcheb/errors.hpp"
#include "ratcheb/green.hpp"
#include "ratcheb/solver.hpp"

namespace ratcheb {

namespace {

std::vector<WeightedAtom> weighted_polar(const PoleDivisor& D) {
  std::vector<WeightedAtom> out;
  for (const auto& a : D.atoms()) out.push_back({a.first, static_cast<double>(a.second)});
  return out;
}

}  // namespace

BandSet n_extension(const RationalFn& F, const CompactSet& E) {
  if (F.is_constant()) throw domain_error("n_extension: F must be nonconstant");
  const double C = F.center(), H = F.halfspan();
  const double scale = std::max(1.0, 2.0 * H);

  // denominator as a Chebyshev series on the hull
  std::vector<double> R{1.0};
  for (const auto& a : F.pole_divisor().finite_atoms())
    for (int q = 0; q < a.second; ++q) R = cheb::mul_linear(R, a.first - C, -H);

  std::vector<double> pts;
  for (int s : {-1, +1}) {
    // roots of F - s: numerator P - s R
    std::vector<double> q = cheb::sub(F.numerator_cheb(), cheb::scale(R, s));
    const int deg = cheb::effective_degree(q, 1e-12);
    for (const auto& u : cheb::roots(q, deg)) {
      const std::complex<double> z = C + H * u;
      if (std::abs(z.imag()) > 1e-8 * std::max(1.0, std::abs(z.real())))
        throw numeric_error("n_extension: complex +-1 point beyond snap tolerance");
      pts.push_back(z.real());
    }
  }
  std::sort(pts.begin(), pts.end());
  std::vector<double> uniq;
  for (double x : pts) {
    if (uniq.empty() || x - uniq.back() > 1e-9 * scale)
      uniq.push_back(x);
  }
  if (uniq.size() < 2) throw numeric_error("n_extension: fewer than two +-1 points");

  BandSet out;
  for (std::size_t i = 0; i + 1 < uniq.size(); ++i) {
    const double mid = 0.5 * (uniq[i] + uniq[i + 1]);
    const double v = F.eval(mid);
    if (v * v < 1.0) out.bands.push_back(Band{uniq[i], uniq[i + 1]});
  }
  if (out.bands.empty()) throw numeric_error("n_extension: no bands found");
  {
    const double far = uniq.back() + std::max(1.0, 2.0 * H);
    const double v = F.eval(far);
    if (v * v < 1.0) throw numeric_error("n_extension: unbounded sublevel region");
  }
  out.expected_band_count = F.degree();

  // merge touching bands into the compact set E_n
  std::vector<Interval> merged;
  for (const auto& b : out.bands) {
    if (!merged.empty() && b.lo - merged.back().hi <= 1e-9 * scale)
      merged.back().hi = b.hi;
    else
      merged.push_back(Interval{b.lo, b.hi});
  }
  out.en = CompactSet(merged);

  // classify every gap of E
  const double tol = 1e-8 * scale;
  for (const Gap& g : E.gaps()) {
    std::vector<Interval> pieces;
    if (!g.unbounded) {
      const double ga = g.left.value, gb = g.right.value;
      for (const auto& iv : out.en.intervals()) {
        const double lo = std::max(iv.lo, ga), hi = std::min(iv.hi, gb);
        if (hi - lo > tol) pieces.push_back(Interval{lo, hi});
      }
      if (pieces.empty()) {
        out.gap_tags.push_back(GapChange::unchanged);
        continue;
      }
      if (pieces.size() > 1) out.ambiguous = true;
      const double u = pieces.front().lo, v = pieces.back().hi;
      const bool at_left = u <= ga + tol, at_right = v >= gb - tol;
      if (at_left && at_right)
        out.gap_tags.push_back(GapChange::closed);
      else if (at_left || at_right)
        out.gap_tags.push_back(GapChange::one_sided);
      else
        out.gap_tags.push_back(GapChange::internal);
    } else {
      const double lo = E.hull_lo(), hi = E.hull_hi();
      bool beyond_right = out.en.hull_hi() > hi + tol;
      bool beyond_left = out.en.hull_lo() < lo - tol;
      if (!beyond_left && !beyond_right) {
        out.gap_tags.push_back(GapChange::unchanged);
      } else if (beyond_left && beyond_right) {
        out.ambiguous = true;
        out.gap_tags.push_back(GapChange::one_sided);
      } else {
        // distinguish an edge extension from a detached interval beyond E
        const double edge = beyond_right ? hi : lo;
        bool touches = false;
        for (const auto& iv : out.en.intervals())
          if (iv.lo <= edge + tol && edge - tol <= iv.hi &&
              (beyond_right ? iv.hi > hi + tol : iv.lo < lo - tol))
            touches = true;
        out.gap_tags.push_back(touches ? GapChange::one_sided : GapChange::internal);
      }
    }
  }
  return out;
}

std::vector<double> band_measure_check(const RationalFn& F, const BandSet& bands) {
  const PoleDivisor actual = F.polar_divisor();
  std::vector<double> out;
  for (const auto& b : bands.bands) {
    double s = 0.0;
    for (const auto& a : actual.atoms())
      s += a.second * green_model(bands.en, a.first)->harmonic_measure(b.lo, b.hi);
    out.push_back(s);
  }
  return out;
}

double representation_check(const RationalFn& F, const BandSet& bands,
                            const std::vector<double>& xs) {
  const PoleDivisor actual = F.polar_divisor();
  const auto atoms = weighted_polar(actual);
  double worst = 0.0;
  for (double x : xs) {
    if (bands.en.contains(x)) continue;
    const double g = green_sum(bands.en, atoms, {x, 0.0});
    const double rhs = std::cosh(g);
    const double lhs = std::abs(F.eval(x));
    if (!std::isfinite(lhs)) continue;  // sampled a pole
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, rhs));
  }
  return worst;
}

BwReport bernstein_walsh_check(const RationalFn& F, const CompactSet& E,
                               const std::vector<std::complex<double>>& zs) {
  BwReport rep;
  auto f = [&](double x) { return F.eval(x); };
  auto df = [&](double x) { return F.eval_deriv(x); };
  const int n = F.pole_divisor().degree();
  double norm = 0.0;
  for (const auto& m : find_local_maxima(f, df, E.intervals(), std::max(33, 8 * (n + 1))))
    norm = std::max(norm, std::abs(m.second));
  rep.norm = norm;

  const auto atoms = weighted_polar(F.polar_divisor());
  rep.worst_margin_exp = 1e300;
  rep.worst_margin_cosh = 1e300;
  for (const auto& z : zs) {
    const double g = green_sum(E, atoms, z);
    const double lhs = std::abs(F.eval(z)) / norm;
    if (!std::isfinite(lhs)) continue;
    rep.worst_margin_exp = std::min(rep.worst_margin_exp, 1.0 - lhs / std::exp(g));
    rep.worst_margin_cosh = std::min(rep.worst_margin_cosh, 1.0 - lhs / std::cosh(g));
  }
  return rep;
}

}  // namespace ratcheb
