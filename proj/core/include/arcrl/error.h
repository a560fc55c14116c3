#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace arcrl {

enum class ErrorCode {
  kRaggedRows,
  kColorOutOfRange,
  kEmptyGrid,
  kGridTooLarge,
  kMalformedGrid,
  kMalformedTask,
  kSamplingExhausted,
  kUnknownTask,
  kEmptyTask,
  kStepAfterTermination,
  kInvalidAction,
  kLifecycleViolation,
  kCheckpointKindMismatch,
  kCheckpointVersion,
  kMalformedCheckpoint,
  kContradictorySample,
  kNoRuleFound,
  kModelIncomplete,
  kUnknownAgent,
  kInsufficientEvalPairs,
  kInvalidConfig,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (CLI, C API) can map it without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace arcrl
