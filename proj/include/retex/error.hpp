#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace retex {

enum class ErrorCode {
  InvalidArgument,
  MalformedRow,
  DuplicateDate,
  EmptySeries,
  UnknownColumn,
  GapTooLarge,
  GapFound,
  SingularFit,
  DegenerateSeries,
  InsufficientData,
  InsufficientHistory,
  SeriesTooShort,
  NegativeThreshold,
  SizeMismatch,
  WindowTooLarge,
  ImageTooLarge,
  ParseError,
  IoError,
};

// Stable CamelCase name used in diagnostics, e.g. "DegenerateSeries".
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message,
        std::optional<std::size_t> row = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  // 1-based data row for MalformedRow; empty otherwise.
  std::optional<std::size_t> row() const noexcept { return row_; }

 private:
  ErrorCode code_;
  std::optional<std::size_t> row_;
};

}  // namespace retex
