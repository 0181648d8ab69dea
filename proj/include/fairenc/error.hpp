#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace fairenc {

enum class ErrorKind {
  kMissingColumn,
  kNonBinaryTarget,
  kEmptyFile,
  kMalformedCsv,
  kNameCollision,
  kInvalidArgument,
  kUndefinedMetric,
  kWidthMismatch,
  kIo,
};

std::string_view to_string(ErrorKind kind);

// Every failure the library reports carries a kind so callers (the CLI in
// particular) can map it to an exit code without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMissingColumn: return "missing column";
    case ErrorKind::kNonBinaryTarget: return "non-binary target";
    case ErrorKind::kEmptyFile: return "empty file";
    case ErrorKind::kMalformedCsv: return "malformed csv";
    case ErrorKind::kNameCollision: return "name collision";
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kUndefinedMetric: return "undefined metric";
    case ErrorKind::kWidthMismatch: return "width mismatch";
    case ErrorKind::kIo: return "io error";
  }
  return "error";
}

}  // namespace fairenc
