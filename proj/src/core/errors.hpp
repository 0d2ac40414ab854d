#pragma once

#include <stdexcept>
#include <string>

namespace factorcop {

enum class ErrorCode
{
  domain,
  parameter,
  convergence,
  degenerate_data,
  dimension,
  singular_matrix,
  config,
  io
};

//! Single exception type for the library; the code drives the C status mapping.
class Error : public std::runtime_error
{
public:
  Error(ErrorCode code, const std::string& what)
    : std::runtime_error(what)
    , code_(code)
  {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void
fail(ErrorCode code, const std::string& what)
{
  throw Error(code, what);
}

inline void
require(bool condition, ErrorCode code, const std::string& what)
{
  if (!condition)
    fail(code, what);
}

} // namespace factorcop
