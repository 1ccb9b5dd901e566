#pragma once

#include <complex>
#include <vector>

#include "ratcheb/compact_set.hpp"
#include "ratcheb/rational_fn.hpp"

namespace ratcheb {

enum class GapChange { unchanged, one_sided, internal, closed };

struct Band {
  double lo = 0.0;
  double hi = 0.0;
};

struct BandSet {
  /// Closures of the connected components of F^{-1}((-1,1)); neighbors may
  /// share an endpoint where F has an interior extremum of modulus one.
  std::vector<Band> bands;
  /// The n-extension E_n as a compact set (touching bands merged).
  CompactSet en;
  /// One tag per gap of E, bounded gaps in increasing order, then the gap
  /// through infinity.
  std::vector<GapChange> gap_tags;
  bool ambiguous = false;          // a classification needed the tie-break rule
  int expected_band_count = 0;     // deg F
};

/// Computes E_n = F^{-1}([-1,1]) from the real roots of F -+ 1 and classifies
/// every gap of E.  Throws numeric_error when a +-1 point is complex beyond
/// the snap tolerance (the input is then not extremal-shaped).
BandSet n_extension(const RationalFn& F, const CompactSet& E);

/// For each open band I: sum_c (F)_infty(c) * omega_{E_n}(I, c); each entry
/// must be 1 up to the engine tolerance.
std::vector<double> band_measure_check(const RationalFn& F, const BandSet& bands);

/// Max relative deviation of |F(x)| from cosh(sum_c (F)_infty(c) G_{E_n}(x,c))
/// over the real samples outside E_n (samples inside E_n are skipped).
double representation_check(const RationalFn& F, const BandSet& bands,
                            const std::vector<double>& xs);

struct BwReport {
  double worst_margin_exp = 0.0;   // min over samples of 1 - |F|/(norm * exp(sum))
  double worst_margin_cosh = 0.0;  // same with the cosh bound
  double norm = 0.0;               // computed sup norm of F on E
};

/// Bernstein-Walsh bounds on E for arbitrary sample points.
BwReport bernstein_walsh_check(const RationalFn& F, const CompactSet& E,
                               const std::vector<std::complex<double>>& zs);

}  // namespace ratcheb
