#pragma once

#include <stdexcept>
#include <string>

namespace mwg {

// Numeric values are part of the C ABI (see include/mwg/mwg.h).
enum class ErrorCode {
  invalid_input = 1,
  domain = 2,
  resolution = 3,
  integrator = 4,
  regime = 5,
  io = 6,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

struct InvalidInput : Error {
  explicit InvalidInput(const std::string& w) : Error(ErrorCode::invalid_input, w) {}
};
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error(ErrorCode::domain, w) {}
};
struct ResolutionError : Error {
  explicit ResolutionError(const std::string& w) : Error(ErrorCode::resolution, w) {}
};
struct IntegratorError : Error {
  explicit IntegratorError(const std::string& w) : Error(ErrorCode::integrator, w) {}
};
struct RegimeError : Error {
  explicit RegimeError(const std::string& w) : Error(ErrorCode::regime, w) {}
};

}  // namespace mwg
