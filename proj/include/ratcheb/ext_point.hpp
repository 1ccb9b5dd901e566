#pragma once

#include <cmath>
#include <string>

#include "ratcheb/errors.hpp"

namespace ratcheb {

/// A point of the extended real line.  There is a single point at infinity;
/// signed infinities are not part of the public model.
struct ExtPoint {
  double value = 0.0;
  bool inf = false;

  static ExtPoint infinity() { return ExtPoint{0.0, true}; }
  static ExtPoint finite(double x) {
    if (!std::isfinite(x)) throw argument_error("ExtPoint: finite value required");
    return ExtPoint{x, false};
  }

  bool is_inf() const { return inf; }

  friend bool operator==(const ExtPoint& a, const ExtPoint& b) {
    if (a.inf || b.inf) return a.inf == b.inf;
    return a.value == b.value;
  }
  friend bool operator!=(const ExtPoint& a, const ExtPoint& b) { return !(a == b); }

  // Total order used only for canonical storage: finite points ascending, infinity last.
  friend bool operator<(const ExtPoint& a, const ExtPoint& b) {
    if (a.inf) return false;
    if (b.inf) return true;
    return a.value < b.value;
  }
};

inline std::string to_string(const ExtPoint& p) {
  return p.inf ? std::string("inf") : std::to_string(p.value);
}

}  // namespace ratcheb
