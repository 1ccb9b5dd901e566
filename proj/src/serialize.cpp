#include "ratcheb/serialize.hpp"

#include <cmath>

#include "ratcheb/errors.hpp"
#include "ratcheb/extension.hpp"
#include "ratcheb/literals.hpp"

namespace ratcheb {

namespace {

nlohmann::json ext_point_json(const ExtPoint& p) {
  if (p.inf) return "inf";
  return p.value;
}

const char* tag_name(GapChange t) {
  switch (t) {
    case GapChange::unchanged: return "unchanged";
    case GapChange::one_sided: return "one-sided";
    case GapChange::internal: return "internal";
    case GapChange::closed: return "closed";
  }
  return "?";
}

}  // namespace

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

nlohmann::json rational_to_json(const RationalFn& F) {
  nlohmann::json j;
  nlohmann::json poles = nlohmann::json::array();
  for (const auto& a : F.pole_divisor().atoms())
    for (int q = 0; q < a.second; ++q) poles.push_back(ext_point_json(a.first));
  j["poles"] = poles;
  j["coeffs"] = F.coeffs();
  j["numerator"] = F.numerator_cheb();
  nlohmann::json dr = nlohmann::json::array();
  for (const auto& r : F.denominator_roots())
    for (int q = 0; q < r.second; ++q) dr.push_back(r.first);
  j["denominator_roots"] = dr;
  j["hull"] = {F.center(), F.halfspan()};
  return j;
}

RationalFn rational_from_json(const nlohmann::json& j) {
  PoleDivisor D;
  for (const auto& p : j.at("poles")) {
    if (p.is_string()) {
      D.add(ExtPoint::infinity(), 1);
    } else {
      D.add(ExtPoint::finite(p.get<double>()), 1);
    }
  }
  const auto hull = j.at("hull");
  return RationalFn(D, hull.at(0).get<double>(), hull.at(1).get<double>(),
                    j.at("coeffs").get<std::vector<double>>());
}

nlohmann::json solution_to_json(const Problem& p, const Solution& s) {
  nlohmann::json j;
  j["schema"] = 1;
  j["problem"] = {{"set", format_set_literal(p.set)},
                  {"poles", format_divisor_literal(p.poles)},
                  {"xstar", format_ext_point(p.x_star)},
                  {"d", p.d}};
  j["m"] = s.m;
  j["constant_case"] = s.constant_case;
  nlohmann::json alt = nlohmann::json::array();
  for (const auto& a : s.alternation) alt.push_back({a.x, a.sign});
  j["alternation"] = alt;
  nlohmann::json zeros = nlohmann::json::array();
  for (const auto& a : s.zeros.atoms()) zeros.push_back({ext_point_json(a.first), a.second});
  j["zeros"] = zeros;
  j["diagnostics"] = {{"iterations", s.iterations}, {"defect", s.defect}};
  j["F"] = rational_to_json(s.F);
  return j;
}

std::string solution_to_csv(const Problem& p, const Solution& s, int samples_per_interval) {
  std::string out = "x,F\n";
  const int S = std::max(2, samples_per_interval);
  for (const auto& iv : p.set.intervals()) {
    for (int q = 0; q < S; ++q) {
      const double x = iv.lo + (iv.hi - iv.lo) * q / (S - 1.0);
      out += format_double(x) + "," + format_double(s.F.eval(x)) + "\n";
    }
  }
  return out;
}

nlohmann::json build_verify_report(const Problem& p, const Solution& s) {
  nlohmann::json j;
  j["schema"] = 1;
  bool all_pass = true;

  const AlternationReport alt = verify_alternation(s.F, p, 1e-6);
  j["alternation"] = {{"size", alt.size},
                      {"expected", p.poles.degree() + 1},
                      {"max_sign_residual", alt.max_sign_residual},
                      {"max_level_residual", alt.max_level_residual},
                      {"bound", alt.bound},
                      {"bound_respected", alt.bound_respected},
                      {"pass", alt.pass}};
  all_pass = all_pass && alt.pass;

  j["defect"] = s.defect;

  if (s.constant_case) {
    j["bands"] = {{"skipped", true}};
    j["pass"] = all_pass;
    return j;
  }

  const BandSet bands = n_extension(s.F, p.set);
  {
    const bool count_ok =
        static_cast<int>(bands.bands.size()) == bands.expected_band_count;
    nlohmann::json tags = nlohmann::json::array();
    for (const auto& t : bands.gap_tags) tags.push_back(tag_name(t));
    bool contains = true;
    for (const auto& iv : p.set.intervals()) {
      const int probes = 17;
      for (int q = 0; q < probes; ++q) {
        const double x = iv.lo + (iv.hi - iv.lo) * q / (probes - 1.0);
        bool inside = false;
        for (const auto& jv : bands.en.intervals())
          if (jv.lo - 1e-9 <= x && x <= jv.hi + 1e-9) inside = true;
        contains = contains && inside;
      }
    }
    j["bands"] = {{"count", bands.bands.size()},
                  {"expected", bands.expected_band_count},
                  {"en", format_set_literal(bands.en)},
                  {"tags", tags},
                  {"ambiguous", bands.ambiguous},
                  {"contains_E", contains},
                  {"pass", count_ok && contains}};
    all_pass = all_pass && count_ok && contains;
  }

  {
    const auto sums = band_measure_check(s.F, bands);
    double dev = 0.0;
    for (double v : sums) dev = std::max(dev, std::abs(v - 1.0));
    j["band_measures"] = {{"values", sums}, {"max_deviation", dev}, {"pass", dev <= 1e-6}};
    all_pass = all_pass && dev <= 1e-6;
  }

  {
    // real probes outside E_n: gap midpoints plus points beyond the hull
    std::vector<double> xs;
    const double W = bands.en.hull_hi() - bands.en.hull_lo();
    for (const Gap& g : bands.en.gaps()) {
      if (g.unbounded) continue;
      const double mid = 0.5 * (g.left.value + g.right.value);
      bool near_pole = false;
      for (const auto& a : p.poles.finite_atoms())
        if (std::abs(mid - a.first) < 1e-6 * (1.0 + std::abs(a.first))) near_pole = true;
      if (!near_pole) xs.push_back(mid);
    }
    for (double f : {0.25, 0.5, 1.0}) {
      double cand[2] = {bands.en.hull_hi() + f * W, bands.en.hull_lo() - f * W};
      for (double x : cand) {
        bool near_pole = false;
        for (const auto& a : p.poles.finite_atoms())
          if (std::abs(x - a.first) < 1e-6 * (1.0 + std::abs(a.first))) near_pole = true;
        if (!near_pole) xs.push_back(x);
      }
    }
    const double dev = representation_check(s.F, bands, xs);
    j["representation"] = {{"max_deviation", dev}, {"pass", dev <= 1e-6}};
    all_pass = all_pass && dev <= 1e-6;
  }

  {
    std::vector<std::complex<double>> zs;
    const double W = p.set.hull_hi() - p.set.hull_lo();
    zs.push_back({p.set.hull_center(), 0.7 * W});
    zs.push_back({p.set.hull_lo(), 0.3 * W});
    zs.push_back({p.set.hull_hi() + 0.4 * W, 0.2 * W});
    zs.push_back({p.set.hull_center() + 0.1 * W, -0.5 * W});
    const BwReport bw = bernstein_walsh_check(s.F, p.set, zs);
    const bool pass = bw.worst_margin_exp >= -1e-9 && bw.worst_margin_cosh >= -1e-9;
    j["bernstein_walsh"] = {{"worst_margin_exp", bw.worst_margin_exp},
                            {"worst_margin_cosh", bw.worst_margin_cosh},
                            {"norm", bw.norm},
                            {"pass", pass}};
    all_pass = all_pass && pass;
  }

  {
    const auto expect = gap_edge_signs(p);
    const Gap g = gap_of(p.set, p.x_star);
    const double fa = s.F.eval(g.left.value);
    const double fb = s.F.eval(g.right.value);
    const bool pass = std::abs(fa - expect.first) <= 1e-6 && std::abs(fb - expect.second) <= 1e-6;
    j["gap_edges"] = {{"expected", {expect.first, expect.second}},
                      {"values", {fa, fb}},
                      {"pass", pass}};
    all_pass = all_pass && pass;
  }

  {
    const int n = p.poles.degree();
    const int deg = s.F.degree();
    const int lower = (n + 2) / 2;  // ceil((n+1)/2)
    j["degree"] = {{"value", deg}, {"lower_bound", lower}, {"pass", deg >= lower}};
    all_pass = all_pass && deg >= lower;
  }

  j["pass"] = all_pass;
  return j;
}

std::string asymptotics_csv(const std::vector<CombinedRow>& rows) {
  std::string out = "n,z,h_n,target,error,v_n,cauchy_increment,ks_distance\n";
  for (const auto& r : rows) {
    out += std::to_string(r.n) + "," + format_complex(r.z) + "," + format_double(r.h_n) + "," +
           format_double(r.target) + "," + format_double(r.error) + "," + format_double(r.v_n) +
           "," + format_double(r.cauchy) + "," + format_double(r.ks) + "\n";
  }
  return out;
}

}  // namespace ratcheb
