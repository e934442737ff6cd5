#ifndef BREGENV_ERROR_HPP
#define BREGENV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace bregenv {

enum class ErrorCode {
  parameter,      // gamma <= 0, negative curvature, malformed options
  domain,         // evaluation outside dom f or outside U where U is required
  dimension,      // mismatched point / objective / set sizes
  infeasible,     // empty intersection of a set (or dom theta) with U
  invalid_set,    // a > b for an interval, zero hyperplane normal
  convexity,      // objective parameters that break convexity
  solver_failure, // bracket search or bisection did not locate a root
  not_converged,  // iteration budget exhausted
  unbounded,      // a numeric conjugate that keeps increasing
  parse,          // grammar errors in objective / set / grid strings
  internal
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

} // namespace bregenv

#endif
