#pragma once

#include <stdexcept>
#include <string>

namespace slopelab {

enum class ErrorCode {
  kInvalidArgument = 1,
  kParse = 2,
  kDimensionMismatch = 3,
  kDomain = 4,
  kUnsupported = 5,
  kPrecondition = 6,
  kInternal = 7,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace slopelab
