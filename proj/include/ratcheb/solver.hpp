#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "ratcheb/compact_set.hpp"
#include "ratcheb/divisor.hpp"
#include "ratcheb/geometry.hpp"
#include "ratcheb/rational_fn.hpp"

namespace ratcheb {

struct Problem {
  CompactSet set;
  PoleDivisor poles;  // D_n^infty
  ExtPoint x_star;
  int d = 0;  // D_n^infty(x_star)
};

/// Validates x_star off E, atoms strictly inside gaps; fills d.
Problem make_problem(CompactSet set, PoleDivisor poles, ExtPoint x_star);

/// True iff every atom is simple and x_star plus all atoms occupy pairwise
/// distinct gaps of E (the extremizer is then the constant 1).
bool is_constant_case(const Problem& p);

struct SolveOptions {
  double tol = 1e-10;            // equioscillation defect target
  int max_iter = 200;
  double eps_pole = 1e-8;        // pole-order reduction threshold
  int samples_per_interval = 0;  // 0: automatic, scaled with n
  unsigned init_jitter_seed = 0; // 0: canonical reference initialization
  double cond_threshold = 1e10;  // switch to the QR-conditioned basis above this
};

struct AlternationPoint {
  double x = 0.0;
  int sign = 0;
};

struct Solution {
  RationalFn F;          // in original coordinates
  double m = 0.0;        // extremal value of the problem
  std::vector<AlternationPoint> alternation;  // cyclically ordered from x_star
  ZeroDivisor zeros;     // D_n^0
  bool constant_case = false;
  int iterations = 0;
  double defect = 0.0;   // final equioscillation defect
  Mobius normalization = Mobius::identity();
};

Solution solve(const Problem& p, const SolveOptions& opts = {});

struct AlternationReport {
  int size = 0;
  double max_level_residual = 0.0;  // max | |F(x_j)| - 1 |
  double max_sign_residual = 0.0;   // max | F(x_j) - sigma_j |
  bool pass = false;                // size == n+1 and residuals within tolerance
  int bound = 0;                    // n + 1 - D^0_F(x_star)
  bool bound_respected = false;
  std::vector<AlternationPoint> points;
};

/// Searches E for the maximal alternation set of F with respect to the
/// problem's divisor and x_star.  level_tol selects candidates |F| >= 1 -
/// level_tol and gates the pass flag.
AlternationReport verify_alternation(const RationalFn& F, const Problem& p,
                                     double level_tol = 1e-6);

struct LpOracleResult {
  double m = 0.0;      // kappa^d / h_grid
  double level = 0.0;  // discrete minimax value of the normalized problem
  std::vector<double> coeffs;  // normalized-basis coefficients (raw basis)
  int iterations = 0;
};

/// Discretized dual solved by the built-in dense simplex; independent
/// desk-scale oracle for solve().
LpOracleResult solve_lp_oracle(const Problem& p, int grid_size);

/// Prescribed signs of the extremizer at the edges of the gap containing
/// x_star: first = F(a), second = F(b) for the cyclic gap (a, b).
std::pair<int, int> gap_edge_signs(const Problem& p);

/// Local maxima of |f| over the intervals, including endpoints; returns
/// (x, f(x)) pairs sorted by x.  Shared by the solver and the verifier.
std::vector<std::pair<double, double>> find_local_maxima(
    const std::function<double(double)>& f, const std::function<double(double)>& df,
    const std::vector<Interval>& intervals, int samples_per_interval);

}  // namespace ratcheb
