#ifndef ADVPLAN_ERROR_H_
#define ADVPLAN_ERROR_H_

#include <stdexcept>
#include <string>

namespace advplan {

enum class ErrorCode {
  kInvalidArgument,
  kGenerationFailure,
  kNonSymmetricInput,
  kNotPositiveDefinite,
  kNotSupported,
  kConfig,
  kIo,
  kNumerical,
};

const char* ToString(ErrorCode code);

// Library-wide exception. Solver divergence is not reported through this
// type; see SolverStatus.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ToString(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
      return "invalid-argument";
    case ErrorCode::kGenerationFailure:
      return "generation-failure";
    case ErrorCode::kNonSymmetricInput:
      return "non-symmetric-input";
    case ErrorCode::kNotPositiveDefinite:
      return "non-positive-definite";
    case ErrorCode::kNotSupported:
      return "not-supported";
    case ErrorCode::kConfig:
      return "config-error";
    case ErrorCode::kIo:
      return "io-error";
    case ErrorCode::kNumerical:
      return "numerical-error";
  }
  return "unknown";
}

}  // namespace advplan

#endif  // ADVPLAN_ERROR_H_
