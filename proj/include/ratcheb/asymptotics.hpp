#pragma once

#include <complex>
#include <vector>

#include "ratcheb/compact_set.hpp"
#include "ratcheb/divisor.hpp"
#include "ratcheb/green.hpp"
#include "ratcheb/solver.hpp"

namespace ratcheb {

enum class SequenceMode { periodic, weighted_rotation };

struct PoleSequenceSpec {
  SequenceMode mode = SequenceMode::periodic;
  /// Atoms with weights summing to 1.  In periodic mode the list is cycled
  /// and each weight must equal its frequency in the list.
  std::vector<WeightedAtom> atoms;
  ExtPoint x_star = ExtPoint::infinity();
  /// Optional per-n extremal points (entry k-1 used for degree k); empty
  /// means the constant x_star above.
  std::vector<ExtPoint> x_star_per_n;
};

ExtPoint x_star_for(const PoleSequenceSpec& spec, int n);

/// D_1 <= D_2 <= ... <= D_n in periodic mode (prefixes of the cycled list);
/// independent largest-remainder rounding per degree in weighted mode.
std::vector<PoleDivisor> generate_divisors(const PoleSequenceSpec& spec, int n);

struct RootAsymptoticsRow {
  int n = 0;
  std::complex<double> z;
  double h_n = 0.0;       // (1/n) log |F_n(z)|
  double target = 0.0;    // integral of G_E(z, .) against the limit measure
  double error = 0.0;     // |h_n - target|
  double bound_margin = 0.0;  // (1/n) sum_c D_n(c) G_E(z,c) - h_n
};

struct RootAsymptoticsReport {
  std::vector<RootAsymptoticsRow> rows;
  bool per_n_bound_ok = true;   // every bound_margin >= -1e-9
  double max_n_times_err = 0.0;
};

RootAsymptoticsReport run_root_asymptotics(const CompactSet& E, const PoleSequenceSpec& spec,
                                           const std::vector<int>& n_list,
                                           const std::vector<std::complex<double>>& z_list,
                                           const SolveOptions& opts = {});

/// Kolmogorov distance between the zero counting measure nu_n and
/// rho = sum w_i omega_E(., c_i), per n.
std::vector<std::pair<int, double>> zero_measure_compare(
    const CompactSet& E, const std::vector<std::pair<int, ZeroDivisor>>& zeros_per_n,
    const std::vector<WeightedAtom>& mu_atoms);

struct SzegoRow {
  int n = 0;
  std::complex<double> z;
  double v_n = 0.0;       // log|F_n(z)| - sum_c D_n(c) G_E(z,c)
  double limit = 0.0;     // -log 2 - sum_t D(t) G_E(z,t), D estimated from data
  double deviation = 0.0;
  double cauchy = 0.0;    // |v_n - v_{n-p}|, 0 on the first row for each z
};

/// Runs the periodic subsequence n = r, r+p, ..., <= n_max (at least three
/// terms required) and compares v_n with the modulus-level limit.
std::vector<SzegoRow> szego_widom_modulus(const CompactSet& E, const PoleSequenceSpec& spec,
                                          const std::vector<std::complex<double>>& z_list,
                                          int n_max, int residue, const SolveOptions& opts = {});

struct CombinedRow {
  int n = 0;
  std::complex<double> z;
  double h_n = 0.0, target = 0.0, error = 0.0;
  double v_n = 0.0, cauchy = 0.0, ks = 0.0;
};

/// Everything the CLI's asymptotics subcommand reports in one pass: root
/// asymptotics rows, Szego-Widom v_n with Cauchy increments, and the
/// Kolmogorov distance of the zero measures.
std::vector<CombinedRow> run_asymptotics_battery(const CompactSet& E,
                                                 const PoleSequenceSpec& spec, int n_max,
                                                 const std::vector<std::complex<double>>& z_list,
                                                 const SolveOptions& opts = {});

/// Thread cap from RATCHEB_THREADS (>=1); defaults to the hardware count.
int thread_cap();

}  // namespace ratcheb
