#include "ratcheb/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <atomic>
#include <cstdlib>
#include <mutex>
#include <optional>
#include <thread>

#include "ratcheb/errors.hpp"

namespace ratcheb {

namespace {

void validate_spec(const PoleSequenceSpec& spec) {
  if (spec.atoms.empty()) throw argument_error("pole sequence: at least one atom required");
  double wsum = 0.0;
  for (const auto& a : spec.atoms) {
    if (!(a.w > 0.0)) throw argument_error("pole sequence: weights must be positive");
    wsum += a.w;
  }
  if (std::abs(wsum - 1.0) > 1e-12)
    throw argument_error("pole sequence: weights must sum to 1");
  if (spec.mode == SequenceMode::periodic) {
    const double p = static_cast<double>(spec.atoms.size());
    for (const auto& a : spec.atoms) {
      int count = 0;
      for (const auto& b : spec.atoms)
        if (b.c == a.c) ++count;
      if (std::abs(a.w - count / p) > 1e-12)
        throw argument_error("pole sequence: periodic weights must match list frequencies");
    }
  }
}

template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const int threads = std::min(count, thread_cap());
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::exception_ptr err;
  std::mutex err_mtx;
  std::atomic<int> next{0};
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (;;) {
        const int i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mtx);
          if (!err) err = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

double rho_cdf(const CompactSet& E, const std::vector<WeightedAtom>& atoms, double x) {
  double s = 0.0;
  for (const auto& a : atoms) {
    const auto model = green_model(E, a.c);
    for (const auto& iv : E.intervals()) {
      if (x <= iv.lo) break;
      s += a.w * model->harmonic_measure(iv.lo, std::min(x, iv.hi));
    }
  }
  return s;
}

}  // namespace

int thread_cap() {
  if (const char* env = std::getenv("RATCHEB_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

ExtPoint x_star_for(const PoleSequenceSpec& spec, int n) {
  if (!spec.x_star_per_n.empty()) {
    if (n - 1 < static_cast<int>(spec.x_star_per_n.size())) return spec.x_star_per_n[n - 1];
    return spec.x_star_per_n.back();
  }
  return spec.x_star;
}

std::vector<PoleDivisor> generate_divisors(const PoleSequenceSpec& spec, int n) {
  validate_spec(spec);
  if (n < 1) throw argument_error("generate_divisors: n must be positive");
  std::vector<PoleDivisor> out;
  if (spec.mode == SequenceMode::periodic) {
    PoleDivisor d;
    for (int k = 0; k < n; ++k) {
      d.add(spec.atoms[k % spec.atoms.size()].c, 1);
      out.push_back(d);
    }
  } else {
    for (int k = 1; k <= n; ++k) {
      PoleDivisor d;
      std::vector<int> counts(spec.atoms.size(), 0);
      std::vector<std::pair<double, std::size_t>> rem;
      int assigned = 0;
      for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
        const double share = k * spec.atoms[i].w;
        counts[i] = static_cast<int>(std::floor(share));
        assigned += counts[i];
        rem.emplace_back(share - counts[i], i);
      }
      std::sort(rem.rbegin(), rem.rend());
      for (int q = 0; q < k - assigned; ++q) counts[rem[q % rem.size()].second] += 1;
      for (std::size_t i = 0; i < spec.atoms.size(); ++i)
        if (counts[i] > 0) d.add(spec.atoms[i].c, counts[i]);
      out.push_back(d);
    }
  }
  return out;
}

RootAsymptoticsReport run_root_asymptotics(const CompactSet& E, const PoleSequenceSpec& spec,
                                           const std::vector<int>& n_list,
                                           const std::vector<std::complex<double>>& z_list,
                                           const SolveOptions& opts) {
  validate_spec(spec);
  for (const auto& a : spec.atoms)
    if (E.contains(a.c)) throw domain_error("run_root_asymptotics: atom on E");

  std::vector<double> targets(z_list.size());
  for (std::size_t zi = 0; zi < z_list.size(); ++zi)
    targets[zi] = green_sum(E, spec.atoms, z_list[zi]);

  std::vector<std::optional<Solution>> sols(n_list.size());
  parallel_for(static_cast<int>(n_list.size()), [&](int i) {
    const int n = n_list[i];
    const PoleDivisor D = generate_divisors(spec, n).back();
    sols[i] = solve(make_problem(E, D, x_star_for(spec, n)), opts);
  });

  RootAsymptoticsReport rep;
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    const int n = n_list[i];
    const PoleDivisor D = generate_divisors(spec, n).back();
    std::vector<WeightedAtom> datoms;
    for (const auto& a : D.atoms()) datoms.push_back({a.first, static_cast<double>(a.second)});
    for (std::size_t zi = 0; zi < z_list.size(); ++zi) {
      RootAsymptoticsRow row;
      row.n = n;
      row.z = z_list[zi];
      row.h_n = std::log(std::abs(sols[i]->F.eval(row.z))) / n;
      row.target = targets[zi];
      row.error = std::abs(row.h_n - row.target);
      row.bound_margin = green_sum(E, datoms, row.z) / n - row.h_n;
      rep.per_n_bound_ok = rep.per_n_bound_ok && row.bound_margin >= -1e-9;
      rep.max_n_times_err = std::max(rep.max_n_times_err, n * row.error);
      rep.rows.push_back(row);
    }
  }
  return rep;
}

std::vector<std::pair<int, double>> zero_measure_compare(
    const CompactSet& E, const std::vector<std::pair<int, ZeroDivisor>>& zeros_per_n,
    const std::vector<WeightedAtom>& mu_atoms) {
  std::vector<std::pair<int, double>> out;
  for (const auto& [n, zeros] : zeros_per_n) {
    std::vector<std::pair<double, int>> finite;
    int finite_total = 0;
    for (const auto& a : zeros.atoms()) {
      if (!a.first.inf) {
        finite.emplace_back(a.first.value, a.second);
        finite_total += a.second;
      }
    }
    std::sort(finite.begin(), finite.end());
    double dist = 0.0;
    int cum = 0;
    for (const auto& [x, mult] : finite) {
      const double fr = rho_cdf(E, mu_atoms, x);
      dist = std::max(dist, std::abs(fr - static_cast<double>(cum) / n));
      cum += mult;
      dist = std::max(dist, std::abs(fr - static_cast<double>(cum) / n));
    }
    // tail: mass at infinity shows up as a deficit against rho's total mass 1
    dist = std::max(dist, std::abs(1.0 - static_cast<double>(finite_total) / n));
    out.emplace_back(n, dist);
  }
  return out;
}

namespace {

/// Limit divisor estimate for the Szego-Widom check: one generalized zero per
/// bounded gap of E taken from the largest-n solve, excluding the x_star gap.
std::vector<WeightedAtom> estimate_limit_divisor(const CompactSet& E, const Solution& sol,
                                                 const ExtPoint& x_star) {
  std::vector<WeightedAtom> out;
  const Gap xgap = gap_of(E, x_star);
  for (const Gap& g : E.gaps()) {
    if (g.unbounded) continue;
    if (g.left == xgap.left && g.right == xgap.right) continue;
    for (const auto& a : sol.zeros.atoms()) {
      if (a.first.inf) continue;
      if (g.left.value < a.first.value && a.first.value < g.right.value) {
        out.push_back({a.first, 1.0});
        break;
      }
    }
  }
  return out;
}

}  // namespace

std::vector<SzegoRow> szego_widom_modulus(const CompactSet& E, const PoleSequenceSpec& spec,
                                          const std::vector<std::complex<double>>& z_list,
                                          int n_max, int residue, const SolveOptions& opts) {
  validate_spec(spec);
  if (spec.mode != SequenceMode::periodic)
    throw argument_error("szego_widom_modulus: periodic mode required");
  const int p = static_cast<int>(spec.atoms.size());
  std::vector<int> ns;
  for (int n = residue >= 1 ? residue : p; n <= n_max; n += p) ns.push_back(n);
  if (ns.size() < 3) throw argument_error("szego_widom_modulus: subsequence shorter than 3");

  std::vector<std::optional<Solution>> sols(ns.size());
  parallel_for(static_cast<int>(ns.size()), [&](int i) {
    const PoleDivisor D = generate_divisors(spec, ns[i]).back();
    sols[i] = solve(make_problem(E, D, x_star_for(spec, ns[i])), opts);
  });

  const auto limit_atoms =
      estimate_limit_divisor(E, *sols.back(), x_star_for(spec, ns.back()));
  std::vector<SzegoRow> rows;
  std::vector<double> prev_v(z_list.size(), 0.0);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    const PoleDivisor D = generate_divisors(spec, n).back();
    std::vector<WeightedAtom> datoms;
    for (const auto& a : D.atoms()) datoms.push_back({a.first, static_cast<double>(a.second)});
    for (std::size_t zi = 0; zi < z_list.size(); ++zi) {
      SzegoRow row;
      row.n = n;
      row.z = z_list[zi];
      row.v_n = std::log(std::abs(sols[i]->F.eval(row.z))) - green_sum(E, datoms, row.z);
      row.limit = -std::log(2.0) - green_sum(E, limit_atoms, row.z);
      row.deviation = std::abs(row.v_n - row.limit);
      row.cauchy = (i == 0) ? 0.0 : std::abs(row.v_n - prev_v[zi]);
      prev_v[zi] = row.v_n;
      rows.push_back(row);
    }
  }
  return rows;
}

std::vector<CombinedRow> run_asymptotics_battery(const CompactSet& E,
                                                 const PoleSequenceSpec& spec, int n_max,
                                                 const std::vector<std::complex<double>>& z_list,
                                                 const SolveOptions& opts) {
  validate_spec(spec);
  std::vector<int> ns;
  if (spec.mode == SequenceMode::periodic) {
    const int p = static_cast<int>(spec.atoms.size());
    for (int n = p; n <= n_max; n += p) ns.push_back(n);
  } else {
    for (int n = 1; n <= n_max; ++n) ns.push_back(n);
  }
  if (ns.empty()) throw argument_error("asymptotics: empty degree list");

  std::vector<std::optional<Solution>> sols(ns.size());
  parallel_for(static_cast<int>(ns.size()), [&](int i) {
    const PoleDivisor D = generate_divisors(spec, ns[i]).back();
    sols[i] = solve(make_problem(E, D, x_star_for(spec, ns[i])), opts);
  });

  std::vector<std::pair<int, ZeroDivisor>> zl;
  for (std::size_t i = 0; i < ns.size(); ++i) zl.emplace_back(ns[i], sols[i]->zeros);
  const auto ks = zero_measure_compare(E, zl, spec.atoms);

  std::vector<double> targets(z_list.size());
  for (std::size_t zi = 0; zi < z_list.size(); ++zi)
    targets[zi] = green_sum(E, spec.atoms, z_list[zi]);

  std::vector<CombinedRow> rows;
  std::vector<double> prev_v(z_list.size(), 0.0);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const int n = ns[i];
    const PoleDivisor D = generate_divisors(spec, n).back();
    std::vector<WeightedAtom> datoms;
    for (const auto& a : D.atoms()) datoms.push_back({a.first, static_cast<double>(a.second)});
    for (std::size_t zi = 0; zi < z_list.size(); ++zi) {
      CombinedRow row;
      row.n = n;
      row.z = z_list[zi];
      const double logF = std::log(std::abs(sols[i]->F.eval(row.z)));
      const double gsum = green_sum(E, datoms, row.z);
      row.h_n = logF / n;
      row.target = targets[zi];
      row.error = std::abs(row.h_n - row.target);
      row.v_n = logF - gsum;
      row.cauchy = (i == 0) ? 0.0 : std::abs(row.v_n - prev_v[zi]);
      prev_v[zi] = row.v_n;
      row.ks = ks[i].second;
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace ratcheb
