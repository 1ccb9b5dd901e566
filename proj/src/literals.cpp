#include "ratcheb/literals.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>

#include "ratcheb/errors.hpp"

namespace ratcheb {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  std::size_t b = s.find_last_not_of(" \t");
  if (a == std::string::npos) return "";
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t next = s.find(sep, pos);
    if (next == std::string::npos) {
      out.push_back(s.substr(pos));
      break;
    }
    out.push_back(s.substr(pos, next - pos));
    pos = next + 1;
  }
  return out;
}

double parse_number(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) throw argument_error("empty number in literal");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    throw argument_error("malformed number: '" + t + "'");
  return v;
}

}  // namespace

CompactSet parse_set_literal(const std::string& s) {
  std::vector<Interval> ivs;
  for (const std::string& chunk : split(trim(s), ';')) {
    const std::string t = trim(chunk);
    if (t.empty()) continue;
    if (t.front() != '[' || t.back() != ']')
      throw argument_error("set literal: expected [a,b], got '" + t + "'");
    const auto parts = split(t.substr(1, t.size() - 2), ',');
    if (parts.size() != 2) throw argument_error("set literal: expected two endpoints in '" + t + "'");
    const double a = parse_number(parts[0]);
    const double b = parse_number(parts[1]);
    if (!(a < b)) throw argument_error("set literal: endpoints must satisfy a < b in '" + t + "'");
    ivs.push_back(Interval{a, b});
  }
  if (ivs.empty()) throw argument_error("set literal: no intervals");
  return CompactSet(std::move(ivs));
}

std::string format_set_literal(const CompactSet& E) {
  std::string out;
  for (const auto& iv : E.intervals()) {
    if (!out.empty()) out += ";";
    out += "[" + format_double(iv.lo) + "," + format_double(iv.hi) + "]";
  }
  return out;
}

PoleDivisor parse_divisor_literal(const std::string& s) {
  PoleDivisor D;
  for (const std::string& chunk : split(trim(s), ',')) {
    const std::string t = trim(chunk);
    if (t.empty()) continue;
    const auto parts = split(t, ':');
    if (parts.size() != 2) throw argument_error("divisor literal: expected c:m in '" + t + "'");
    const ExtPoint c = parse_ext_point(parts[0]);
    const double m = parse_number(parts[1]);
    const int mi = static_cast<int>(m);
    if (m != mi || mi <= 0)
      throw argument_error("divisor literal: multiplicity must be a positive integer in '" + t + "'");
    D.add(c, mi);
  }
  if (D.empty()) throw argument_error("divisor literal: no atoms");
  return D;
}

std::string format_divisor_literal(const PoleDivisor& D) {
  std::string out;
  for (const auto& a : D.atoms()) {
    if (!out.empty()) out += ",";
    out += format_ext_point(a.first) + ":" + std::to_string(a.second);
  }
  return out;
}

std::vector<WeightedAtom> parse_weighted_atoms(const std::string& s) {
  std::vector<WeightedAtom> out;
  for (const std::string& chunk : split(trim(s), ',')) {
    const std::string t = trim(chunk);
    if (t.empty()) continue;
    const auto parts = split(t, ':');
    if (parts.size() != 2) throw argument_error("atoms literal: expected c:w in '" + t + "'");
    out.push_back({parse_ext_point(parts[0]), parse_number(parts[1])});
  }
  if (out.empty()) throw argument_error("atoms literal: no atoms");
  return out;
}

ExtPoint parse_ext_point(const std::string& s) {
  const std::string t = trim(s);
  if (t == "inf" || t == "Inf" || t == "INF") return ExtPoint::infinity();
  return ExtPoint::finite(parse_number(t));
}

std::string format_ext_point(const ExtPoint& p) {
  return p.inf ? "inf" : format_double(p.value);
}

std::complex<double> parse_complex(const std::string& s) {
  std::string t = trim(s);
  if (t.empty()) throw argument_error("empty complex literal");
  if (t.back() != 'i' && t.back() != 'I') return {parse_number(t), 0.0};
  t.pop_back();
  // split the imaginary tail from an optional real head at the last +/- that
  // is not an exponent sign
  int cut = -1;
  for (int i = static_cast<int>(t.size()) - 1; i > 0; --i) {
    if ((t[i] == '+' || t[i] == '-') && t[i - 1] != 'e' && t[i - 1] != 'E') {
      cut = i;
      break;
    }
  }
  auto imag_of = [&](std::string im) {
    const std::string v = trim(im);
    if (v.empty() || v == "+") return 1.0;
    if (v == "-") return -1.0;
    return parse_number(v);
  };
  if (cut < 0) return {0.0, imag_of(t)};
  return {parse_number(t.substr(0, cut)), imag_of(t.substr(cut))};
}

std::vector<std::complex<double>> parse_complex_list(const std::string& s, char sep) {
  std::vector<std::complex<double>> out;
  for (const std::string& chunk : split(trim(s), sep)) {
    const std::string t = trim(chunk);
    if (!t.empty()) out.push_back(parse_complex(t));
  }
  if (out.empty()) throw argument_error("empty evaluation list");
  return out;
}

std::string format_complex(const std::complex<double>& z) {
  if (z.imag() == 0.0) return format_double(z.real());
  const std::string im = format_double(z.imag()) + "i";
  if (z.real() == 0.0) return im;
  return format_double(z.real()) + (z.imag() >= 0.0 ? "+" : "") + format_double(z.imag()) + "i";
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace ratcheb
