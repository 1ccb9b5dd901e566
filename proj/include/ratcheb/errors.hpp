#pragma once

#include <stdexcept>
#include <string>

namespace ratcheb {

enum class errc {
  argument,        // malformed input (bad literal, wrong sizes)
  domain,          // mathematically invalid input (point on E, pole order exceeded)
  numeric,         // quadrature / linear algebra failure
  nonconvergence,  // iteration cap hit
  internal,        // invariant violated inside the library
};

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

class argument_error : public error {
 public:
  explicit argument_error(const std::string& msg) : error(errc::argument, msg) {}
};

class domain_error : public error {
 public:
  explicit domain_error(const std::string& msg) : error(errc::domain, msg) {}
};

class numeric_error : public error {
 public:
  explicit numeric_error(const std::string& msg) : error(errc::numeric, msg) {}
};

class nonconvergence_error : public error {
 public:
  nonconvergence_error(const std::string& msg, double last_defect)
      : error(errc::nonconvergence, msg), last_defect_(last_defect) {}
  double last_defect() const { return last_defect_; }

 private:
  double last_defect_;
};

class internal_error : public error {
 public:
  explicit internal_error(const std::string& msg) : error(errc::internal, msg) {}
};

}  // namespace ratcheb
