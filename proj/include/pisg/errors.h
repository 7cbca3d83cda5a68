#ifndef PISG_ERRORS_H_
#define PISG_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace pisg {

enum class ErrorCode {
  kSyntaxError,
  kRowSumError,
  kNegativeProbability,
  kPerfectInfoViolation,
  kMissingEntry,
  kDuplicateEntry,
  kInvalidStrategy,
  kSingularSystem,
  kNumericalBreakdown,
  kBadWeights,
  kDegenerateExtraction,
  kObjectiveMismatch,
  kIterationCapExceeded,
  kCycleDetected,
  kSizeLimit,
  kNoPureSaddle,
};

std::string_view ErrorName(ErrorCode code);

// Base class for every domain failure raised by the library. The message
// always starts with the error name so that diagnostics are greppable.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(ErrorName(code)) +
                           (detail.empty() ? "" : " " + detail)),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pisg

#endif  // PISG_ERRORS_H_
