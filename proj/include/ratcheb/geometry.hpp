#pragma once

#include <vector>

#include "ratcheb/compact_set.hpp"
#include "ratcheb/divisor.hpp"
#include "ratcheb/ext_point.hpp"
#include "ratcheb/mobius.hpp"

namespace ratcheb {

/// True iff the sequence has no repetitions and some element of PSL(2,R)
/// sends the first point to infinity and the rest to a strictly increasing
/// finite sequence.  Requires at least 3 points.
bool cyclically_ordered(const std::vector<ExtPoint>& points);

/// Membership in the cyclic interval [a, b) for distinct a, b.
bool in_cyclic_left_closed(const ExtPoint& a, const ExtPoint& b, const ExtPoint& x);

/// Membership in the open cyclic interval (a, b) for distinct a, b.
bool in_cyclic_open(const ExtPoint& a, const ExtPoint& b, const ExtPoint& x);

/// S_n(x) = sum over atoms c != x_star of D(c) * chi_[x_star, c)(x).
/// x must be distinct from x_star and from every atom.
int sign_function(const PoleDivisor& D, const ExtPoint& x_star, const ExtPoint& x);

/// The gap of E whose cyclic interior contains x.  x must lie off E.
Gap gap_of(const CompactSet& E, const ExtPoint& x);

struct NormalizedProblem {
  Mobius map;          // original -> normalized coordinates
  CompactSet set;      // image of E, hull scaled to [-1, 1]
  PoleDivisor divisor; // pushforward of D
  ExtPoint x_star;     // always the point at infinity
};

/// Moves x_star to infinity (exactly) and rescales so the hull of the image
/// set is [-1, 1].  The map is -1/(z - x_star) composed with an affine
/// rescale for finite x_star, and the affine rescale alone otherwise.
NormalizedProblem normalize_problem(const CompactSet& E, const PoleDivisor& D,
                                    const ExtPoint& x_star);

/// Pushforward f_*D = D o f^{-1}: atoms move by f, multiplicities unchanged.
PoleDivisor pushforward(const Mobius& f, const PoleDivisor& D);

/// Image f(E) as a CompactSet; requires f^{-1}(inf) off E.
CompactSet map_set(const Mobius& f, const CompactSet& E);

/// The factor kappa with lim_{x->x_star} r(f(x), inf) / r(x, x_star) = kappa,
/// for f sending x_star to infinity.  Converts extremal values between
/// charts: m_original = m_normalized * kappa^d.
double leading_factor(const Mobius& f, const ExtPoint& x_star);

}  // namespace ratcheb
