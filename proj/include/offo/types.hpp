#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace offo {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

enum class ErrorCode {
  InvalidParameter,
  DimensionMismatch,
  NonFiniteValue,
  NonFiniteInput,
  UnknownProblem,
  ConfigMismatch,
  OutOfDomain,
  MissingReference,
  MissingConstants,
  EmptyResults,
  Io,
};

const char* to_string(ErrorCode code);

/// Exception type thrown by every core routine. The C API maps `code()` onto
/// its status enumeration.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) throw Error(code, what);
}

inline bool all_finite(const Vector& v) { return v.allFinite(); }

}  // namespace offo
