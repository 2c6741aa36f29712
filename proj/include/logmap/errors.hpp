#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace logmap {

// Failure categories. The CLI prints the category name as the first token of
// its single-line error report and maps each to a distinct exit status.
enum class ErrorCategory {
  Parse,
  Range,
  Domain,
  Config,
  InsufficientData,
  Comparison,
  Io,
};

constexpr std::string_view category_name(ErrorCategory c) noexcept {
  switch (c) {
    case ErrorCategory::Parse: return "parse";
    case ErrorCategory::Range: return "range";
    case ErrorCategory::Domain: return "domain";
    case ErrorCategory::Config: return "config";
    case ErrorCategory::InsufficientData: return "insufficient-data";
    case ErrorCategory::Comparison: return "comparison";
    case ErrorCategory::Io: return "io";
  }
  return "unknown";
}

constexpr int exit_code(ErrorCategory c) noexcept {
  return 2 + static_cast<int>(c);
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

#define LOGMAP_DEFINE_ERROR(name, cat)                             \
  class name : public Error {                                      \
   public:                                                         \
    explicit name(const std::string& what) : Error(cat, what) {}   \
  };

LOGMAP_DEFINE_ERROR(ParseError, ErrorCategory::Parse)
LOGMAP_DEFINE_ERROR(RangeError, ErrorCategory::Range)
LOGMAP_DEFINE_ERROR(DomainError, ErrorCategory::Domain)
LOGMAP_DEFINE_ERROR(ConfigError, ErrorCategory::Config)
LOGMAP_DEFINE_ERROR(InsufficientDataError, ErrorCategory::InsufficientData)
LOGMAP_DEFINE_ERROR(ComparisonError, ErrorCategory::Comparison)
LOGMAP_DEFINE_ERROR(IoError, ErrorCategory::Io)

#undef LOGMAP_DEFINE_ERROR

}  // namespace logmap
