#include "ratcheb/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace ratcheb {

bool cyclically_ordered(const std::vector<ExtPoint>& points) {
  if (points.size() < 3) throw argument_error("cyclically_ordered: need at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i] == points[j]) return false;

  // Rotate coordinates so the first point sits at infinity, then count
  // descents in the remaining finite sequence.
  const ExtPoint& p0 = points[0];
  std::vector<double> rest;
  rest.reserve(points.size() - 1);
  if (p0.inf) {
    for (std::size_t i = 1; i < points.size(); ++i) rest.push_back(points[i].value);
  } else {
    const Mobius rot = Mobius::inversion_about(p0.value);
    for (std::size_t i = 1; i < points.size(); ++i) {
      const ExtPoint q = rot(points[i]);
      if (q.inf) return false;  // coincided with p0 numerically
      rest.push_back(q.value);
    }
  }
  for (std::size_t i = 0; i + 1 < rest.size(); ++i)
    if (!(rest[i] < rest[i + 1])) return false;
  return true;
}

bool in_cyclic_left_closed(const ExtPoint& a, const ExtPoint& b, const ExtPoint& x) {
  if (a == b) throw argument_error("cyclic interval: endpoints must be distinct");
  if (x == a) return true;
  if (x == b) return false;
  if (a.inf) {
    // [inf, b) = {inf} u (-inf, b)
    return !x.inf && x.value < b.value;
  }
  if (b.inf) {
    // [a, inf) = [a, +inf) on the reals
    return !x.inf && x.value >= a.value;
  }
  if (a.value < b.value) return !x.inf && a.value <= x.value && x.value < b.value;
  // wraps through infinity
  return x.inf || x.value >= a.value || x.value < b.value;
}

bool in_cyclic_open(const ExtPoint& a, const ExtPoint& b, const ExtPoint& x) {
  if (x == a) return false;
  return in_cyclic_left_closed(a, b, x);
}

int sign_function(const PoleDivisor& D, const ExtPoint& x_star, const ExtPoint& x) {
  if (x == x_star) throw domain_error("sign_function: x coincides with x_star");
  int s = 0;
  for (const auto& atom : D.atoms()) {
    if (atom.first == x_star) continue;
    if (x == atom.first) throw domain_error("sign_function: x coincides with an atom");
    if (in_cyclic_left_closed(x_star, atom.first, x)) s += atom.second;
  }
  return s;
}

Gap gap_of(const CompactSet& E, const ExtPoint& x) {
  if (E.contains(x)) throw domain_error("gap_of: point lies in E");
  for (const Gap& g : E.gaps()) {
    if (g.unbounded) {
      if (x.inf || x.value > g.left.value || x.value < g.right.value) return g;
    } else {
      if (!x.inf && g.left.value < x.value && x.value < g.right.value) return g;
    }
  }
  throw internal_error("gap_of: no gap found");
}

PoleDivisor pushforward(const Mobius& f, const PoleDivisor& D) {
  PoleDivisor out;
  for (const auto& atom : D.atoms()) out.add(f(atom.first), atom.second);
  return out;
}

CompactSet map_set(const Mobius& f, const CompactSet& E) {
  const ExtPoint pole = f.inverse()(ExtPoint::infinity());
  if (E.contains(pole)) throw domain_error("map_set: map pole lies in E");

  std::vector<Interval> images;
  for (const auto& iv : E.intervals()) {
    // The interval cannot straddle the pole of f, so f is monotone increasing
    // on it and the image is again a bounded interval.
    if (!pole.inf && iv.lo < pole.value && pole.value < iv.hi)
      throw domain_error("map_set: map pole lies in E");
    const ExtPoint lo = f(ExtPoint::finite(iv.lo));
    const ExtPoint hi = f(ExtPoint::finite(iv.hi));
    if (lo.inf || hi.inf) throw domain_error("map_set: image endpoint at infinity");
    images.push_back(Interval{lo.value, hi.value});
  }
  if (E.contains_infinity()) {
    const ExtPoint lo = f(ExtPoint::finite(E.hull_hi()));
    const ExtPoint hi = f(ExtPoint::finite(E.hull_lo()));
    if (lo.inf || hi.inf) throw domain_error("map_set: image endpoint at infinity");
    images.push_back(Interval{lo.value, hi.value});
  }
  return CompactSet(std::move(images), false);
}

NormalizedProblem normalize_problem(const CompactSet& E, const PoleDivisor& D,
                                    const ExtPoint& x_star) {
  if (E.contains(x_star)) throw domain_error("normalize_problem: x_star lies in E");
  validate_divisor_off_set(D, E);

  Mobius base = Mobius::identity();
  CompactSet mapped = E;
  if (!x_star.inf) {
    base = Mobius::inversion_about(x_star.value);
    mapped = map_set(base, E);
  } else if (E.contains_infinity()) {
    throw domain_error("normalize_problem: x_star = infinity lies in E");
  }

  const double center = mapped.hull_center();
  const double half = mapped.hull_half();
  const Mobius rescale = Mobius::affine(1.0 / half, -center / half);
  const Mobius total = rescale.compose(base);

  return NormalizedProblem{total, map_set(rescale, mapped), pushforward(total, D),
                           ExtPoint::infinity()};
}

double leading_factor(const Mobius& f, const ExtPoint& x_star) {
  if (x_star.inf) {
    if (!f.is_affine()) throw argument_error("leading_factor: map must fix infinity");
    return f.a() / f.d();
  }
  if (f.c() == 0.0) throw argument_error("leading_factor: map must send x_star to infinity");
  return -(f.a() * x_star.value + f.b()) / f.c();
}

}  // namespace ratcheb
