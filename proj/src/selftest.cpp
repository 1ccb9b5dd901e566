#include "ratcheb/selftest.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <sstream>

#include "ratcheb/extension.hpp"
#include "ratcheb/green.hpp"
#include "ratcheb/literals.hpp"
#include "ratcheb/serialize.hpp"
#include "ratcheb/solver.hpp"

namespace ratcheb {

namespace {

struct Battery {
  std::ostringstream out;
  int checks = 0;
  int failures = 0;

  void check(const std::string& name, bool ok, const std::string& detail) {
    ++checks;
    if (!ok) ++failures;
    out << (ok ? "ok   " : "FAIL ") << name;
    if (!detail.empty()) out << "  (" << detail << ")";
    out << "\n";
  }
};

Problem random_problem(std::mt19937& rng) {
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  const int num_iv = 2 + static_cast<int>(u01(rng) * 2.0);  // 2 or 3
  std::vector<Interval> ivs;
  double x = -3.0 + u01(rng);
  for (int i = 0; i < num_iv; ++i) {
    const double len = 0.5 + 1.2 * u01(rng);
    ivs.push_back(Interval{x, x + len});
    x += len + 0.4 + 0.8 * u01(rng);
  }
  CompactSet E(ivs);

  // candidate pole sites: interiors of bounded gaps and points beyond the hull
  std::vector<ExtPoint> sites;
  for (std::size_t j = 0; j + 1 < ivs.size(); ++j) {
    const double ga = ivs[j].hi, gb = ivs[j + 1].lo;
    sites.push_back(ExtPoint::finite(ga + (0.25 + 0.5 * u01(rng)) * (gb - ga)));
  }
  sites.push_back(ExtPoint::finite(E.hull_hi() + 0.5 + 1.5 * u01(rng)));
  sites.push_back(ExtPoint::finite(E.hull_lo() - 0.5 - 1.5 * u01(rng)));
  sites.push_back(ExtPoint::infinity());

  PoleDivisor D;
  const int natoms = 1 + static_cast<int>(u01(rng) * 2.0);
  int degree = 0;
  for (int a = 0; a < natoms; ++a) {
    const ExtPoint c = sites[static_cast<std::size_t>(u01(rng) * sites.size()) % sites.size()];
    if (D.at(c) > 0) continue;
    const int mult = 1 + static_cast<int>(u01(rng) * 3.0);
    D.add(c, mult);
    degree += mult;
  }
  if (degree == 0) D.add(ExtPoint::infinity(), 2);

  // x_star: one of the atoms (Chebyshev flavor) or a fresh site (residual)
  ExtPoint x_star = ExtPoint::infinity();
  if (u01(rng) < 0.5 && !D.atoms().empty()) {
    x_star = D.atoms()[static_cast<std::size_t>(u01(rng) * D.atoms().size()) % D.atoms().size()]
                 .first;
  } else {
    x_star = sites[static_cast<std::size_t>(u01(rng) * sites.size()) % sites.size()];
  }
  return make_problem(E, D, x_star);
}

}  // namespace

SelftestResult run_selftest(unsigned seed) {
  Battery bat;
  const double g2 = std::log(2.0 + std::sqrt(3.0));
  const double g32 = std::log(5.0 + 2.0 * std::sqrt(6.0));

  try {
    const CompactSet E = parse_set_literal("[-1,1]");
    const auto model = green_model(E, ExtPoint::infinity());
    const double v = model->eval({2.0, 0.0});
    bat.check("green single-interval pole-at-infinity", std::abs(v - g2) <= 1e-9,
              "G(2)=" + format_double(v));
    const double mass = model->total_mass();
    bat.check("harmonic measure total mass", std::abs(mass - 1.0) <= 1e-8,
              format_double(mass));
    const double third = model->harmonic_measure(0.5, 1.0);
    bat.check("arcsine measure of [0.5,1]", std::abs(third - 1.0 / 3.0) <= 1e-8,
              format_double(third));

    const auto model2 = green_model(E, ExtPoint::finite(2.0));
    const double w = model2->eval({3.0, 0.0});
    bat.check("green single-interval finite pole", std::abs(w - g32) <= 1e-9,
              "G(3,2)=" + format_double(w));

    const CompactSet Esym = parse_set_literal("[-2,-1];[1,2]");
    const auto msym = green_model(Esym, ExtPoint::infinity());
    const auto crit = msym->critical_points();
    bat.check("symmetric two-interval critical point",
              crit.size() == 1 && std::abs(crit[0]) <= 1e-9,
              crit.empty() ? "none" : format_double(crit[0]));

    const double s1 = green_model(Esym, ExtPoint::finite(0.2))->eval({-0.3, 0.0});
    const double s2 = green_model(Esym, ExtPoint::finite(-0.3))->eval({0.2, 0.0});
    bat.check("green symmetry", std::abs(s1 - s2) <= 1e-7,
              format_double(s1) + " vs " + format_double(s2));

    const double k1 = koosis_residual(E, E, ExtPoint::infinity(), {5.0, 0.0});
    const double k2 = koosis_residual(E, parse_set_literal("[-1,1];[2,3]"),
                                      ExtPoint::infinity(), {5.0, 0.0});
    const double k3 = koosis_residual(E, parse_set_literal("[-1.5,1]"), ExtPoint::finite(4.0),
                                      {0.0, 2.0});
    bat.check("koosis identity (equal sets)", k1 == 0.0, format_double(k1));
    bat.check("koosis identity (added interval)", k2 <= 1e-6, format_double(k2));
    bat.check("koosis identity (grown interval)", k3 <= 1e-6, format_double(k3));
  } catch (const std::exception& e) {
    bat.check("green engine battery", false, e.what());
  }

  try {
    const CompactSet E = parse_set_literal("[-1,1]");
    PoleDivisor D;
    D.add(ExtPoint::infinity(), 3);
    const Solution s = solve(make_problem(E, D, ExtPoint::infinity()));
    double worst = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double x = -1.0 + 2.0 * i / 100.0;
      worst = std::max(worst, std::abs(s.F.eval(x) - std::cos(3.0 * std::acos(x))));
    }
    bat.check("chebyshev T3 recovery", worst <= 1e-9 && std::abs(s.m - 4.0) <= 1e-9,
              "m=" + format_double(s.m) + " err=" + format_double(worst));

    PoleDivisor D2;
    D2.add(ExtPoint::finite(2.0), 1);
    const Solution sc = solve(make_problem(E, D2, ExtPoint::finite(2.0)));
    bat.check("single-pole hand solve", std::abs(sc.m - 3.0) <= 1e-9,
              "m=" + format_double(sc.m));
    const Solution sr = solve(make_problem(E, D2, ExtPoint::infinity()));
    bat.check("single-pole residual variant", std::abs(sr.m - 2.0) <= 1e-9,
              "m=" + format_double(sr.m));

    const Problem pc = make_problem(parse_set_literal("[-2,-1];[0,1]"),
                                    parse_divisor_literal("-0.5:1"), ExtPoint::infinity());
    const Solution scst = solve(pc);
    const auto rep = verify_alternation(scst.F, pc);
    bat.check("constant case", scst.constant_case && scst.m == 1.0 && rep.pass,
              "size=" + std::to_string(rep.size));
  } catch (const std::exception& e) {
    bat.check("solver hand battery", false, e.what());
  }

  // randomized structure battery
  std::mt19937 rng(seed);
  for (int trial = 0; trial < 5; ++trial) {
    std::string name = "structure battery #" + std::to_string(trial + 1);
    try {
      const Problem p = random_problem(rng);
      const Solution s = solve(p);
      if (s.constant_case) {
        const auto rep = verify_alternation(s.F, p);
        bat.check(name, rep.pass, "constant case");
        continue;
      }
      const auto rep = verify_alternation(s.F, p, 1e-6);
      bool ok = rep.pass && s.defect <= 1e-10;
      std::string why = ok ? "" : "alternation/defect";
      // zeros: real, simple, at most one per gap, none in the x_star gap
      const Gap xg = gap_of(p.set, p.x_star);
      for (const Gap& g : p.set.gaps()) {
        int cnt = 0;
        for (const auto& a : s.zeros.atoms()) {
          if (a.first.inf ? g.unbounded
                          : in_cyclic_open(g.left, g.right, a.first)) {
            cnt += a.second;
          }
        }
        const bool is_xgap = (g.left == xg.left && g.right == xg.right);
        if (is_xgap && cnt != 0) { ok = false; why = "zero in x_star gap"; }
        if (cnt > 1) { ok = false; why = "multiple zeros in a gap"; }
      }
      for (const auto& a : s.zeros.atoms())
        if (a.second > 1 && !(a.first.inf)) { ok = false; why = "non-simple zero"; }
      const int deg = s.F.degree();
      const int n = p.poles.degree();
      if (deg < (n + 2) / 2) { ok = false; why = "degree bound"; }
      const auto edge = gap_edge_signs(p);
      const double fa = s.F.eval(xg.left.value), fb = s.F.eval(xg.right.value);
      if (std::abs(fa - edge.first) > 1e-6 || std::abs(fb - edge.second) > 1e-6) {
        ok = false;
        why = "gap edge signs";
      }
      bat.check(name, ok, why);
    } catch (const std::exception& e) {
      bat.check(name, false, e.what());
    }
  }

  // LP oracle agreement
  try {
    const CompactSet E = parse_set_literal("[-1,1]");
    PoleDivisor D;
    D.add(ExtPoint::infinity(), 5);
    const Problem p = make_problem(E, D, ExtPoint::infinity());
    const Solution s = solve(p);
    const auto lp = solve_lp_oracle(p, 2001);
    bat.check("lp oracle (T5)", std::abs(s.m - lp.m) <= 5e-4,
              format_double(s.m) + " vs " + format_double(lp.m));

    PoleDivisor D2;
    D2.add(ExtPoint::finite(2.0), 1);
    const Problem p2 = make_problem(E, D2, ExtPoint::finite(2.0));
    const auto lp2 = solve_lp_oracle(p2, 2001);
    bat.check("lp oracle (single pole)", std::abs(lp2.m - 3.0) <= 5e-4, format_double(lp2.m));
  } catch (const std::exception& e) {
    bat.check("lp oracle battery", false, e.what());
  }

  // full verification report on one solved problem
  try {
    const Problem p = make_problem(parse_set_literal("[-2,-1];[0,1]"),
                                   parse_divisor_literal("-0.5:2,inf:2"), ExtPoint::infinity());
    const Solution s = solve(p);
    const auto rep = build_verify_report(p, s);
    bat.check("verification report", rep.at("pass").get<bool>(),
              rep.at("pass").get<bool>() ? "" : dump_json(rep));
  } catch (const std::exception& e) {
    bat.check("verification report", false, e.what());
  }

  SelftestResult res;
  res.checks = bat.checks;
  res.failures = bat.failures;
  res.report = bat.out.str();
  return res;
}

}  // namespace ratcheb
