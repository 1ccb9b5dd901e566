#pragma once

#include <complex>
#include <string>
#include <vector>

#include "ratcheb/compact_set.hpp"
#include "ratcheb/divisor.hpp"
#include "ratcheb/green.hpp"

namespace ratcheb {

/// Set literal: "[a1,b1];[a2,b2];..." with decimal endpoints.
CompactSet parse_set_literal(const std::string& s);
std::string format_set_literal(const CompactSet& E);

/// Divisor literal: "c1:m1,c2:m2" where c is a decimal or "inf".
PoleDivisor parse_divisor_literal(const std::string& s);
std::string format_divisor_literal(const PoleDivisor& D);

/// Weighted atoms: "c1:w1,c2:w2" with decimal weights.
std::vector<WeightedAtom> parse_weighted_atoms(const std::string& s);

/// "inf" or a decimal number.
ExtPoint parse_ext_point(const std::string& s);
std::string format_ext_point(const ExtPoint& p);

/// Complex literals: "3", "2i", "-i", "1+2i", "1.5-0.25i".
std::complex<double> parse_complex(const std::string& s);
std::vector<std::complex<double>> parse_complex_list(const std::string& s, char sep = ';');
std::string format_complex(const std::complex<double>& z);

/// 17 significant digits; round-trips doubles exactly.
std::string format_double(double x);

}  // namespace ratcheb
