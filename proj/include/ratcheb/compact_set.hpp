#pragma once

#include <algorithm>
#include <vector>

#include "ratcheb/errors.hpp"
#include "ratcheb/ext_point.hpp"

namespace ratcheb {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double mid() const { return 0.5 * (lo + hi); }
  double half() const { return 0.5 * (hi - lo); }
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// A gap of E: the cyclic interval (left, right) in the complement.  For the
/// gap through infinity, left is the largest endpoint of E and right the
/// smallest.
struct Gap {
  ExtPoint left;
  ExtPoint right;
  bool unbounded = false;
};

/// Finite union of disjoint closed intervals of positive length.  The
/// contains_infinity flag marks the pre-normalization form where E also
/// includes the closed arc through infinity from the last endpoint to the
/// first.
class CompactSet {
 public:
  explicit CompactSet(std::vector<Interval> intervals, bool contains_infinity = false)
      : intervals_(std::move(intervals)), contains_infinity_(contains_infinity) {
    if (intervals_.empty()) throw argument_error("CompactSet: at least one interval required");
    std::sort(intervals_.begin(), intervals_.end(),
              [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
    for (const auto& iv : intervals_) {
      if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi))
        throw argument_error("CompactSet: endpoints must be finite");
      if (!(iv.lo < iv.hi))
        throw argument_error("CompactSet: intervals must have positive length");
    }
    for (std::size_t j = 0; j + 1 < intervals_.size(); ++j) {
      if (!(intervals_[j].hi < intervals_[j + 1].lo))
        throw argument_error("CompactSet: intervals must be strictly increasing and disjoint");
    }
  }

  const std::vector<Interval>& intervals() const { return intervals_; }
  bool contains_infinity() const { return contains_infinity_; }
  std::size_t size() const { return intervals_.size(); }

  bool contains(const ExtPoint& p) const {
    if (p.inf) return contains_infinity_;
    for (const auto& iv : intervals_)
      if (iv.contains(p.value)) return true;
    return false;
  }
  bool contains(double x) const { return contains(ExtPoint{x, false}); }

  double hull_lo() const { return intervals_.front().lo; }
  double hull_hi() const { return intervals_.back().hi; }
  double hull_center() const { return 0.5 * (hull_lo() + hull_hi()); }
  double hull_half() const { return 0.5 * (hull_hi() - hull_lo()); }

  /// Sorted endpoint list e_1 < ... < e_{2N}.
  std::vector<double> endpoints() const {
    std::vector<double> e;
    e.reserve(2 * intervals_.size());
    for (const auto& iv : intervals_) {
      e.push_back(iv.lo);
      e.push_back(iv.hi);
    }
    return e;
  }

  /// Bounded gaps in increasing order, then the gap through infinity (when
  /// infinity is not part of the set).
  std::vector<Gap> gaps() const {
    std::vector<Gap> g;
    for (std::size_t j = 0; j + 1 < intervals_.size(); ++j)
      g.push_back(Gap{ExtPoint::finite(intervals_[j].hi), ExtPoint::finite(intervals_[j + 1].lo), false});
    if (!contains_infinity_)
      g.push_back(Gap{ExtPoint::finite(hull_hi()), ExtPoint::finite(hull_lo()), true});
    return g;
  }

  friend bool operator==(const CompactSet& x, const CompactSet& y) {
    if (x.contains_infinity_ != y.contains_infinity_) return false;
    if (x.intervals_.size() != y.intervals_.size()) return false;
    for (std::size_t j = 0; j < x.intervals_.size(); ++j)
      if (x.intervals_[j].lo != y.intervals_[j].lo || x.intervals_[j].hi != y.intervals_[j].hi)
        return false;
    return true;
  }

 private:
  std::vector<Interval> intervals_;
  bool contains_infinity_;
};

}  // namespace ratcheb
