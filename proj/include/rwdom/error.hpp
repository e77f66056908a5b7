#pragma once

#include <stdexcept>
#include <string>

namespace rwdom {

enum class ErrorCode {
  kInvalidArgument,
  kParse,
  kRejectedEdge,
  kIsolatedNode,
  kEmptyGraph,
  kIo,
  kSizeGuard,
  kUndefinedMetric,
  kState,
};

// All library failures surface as this exception; the C API maps the code
// onto rwdom_status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::kInvalidArgument, what);
}

}  // namespace rwdom
