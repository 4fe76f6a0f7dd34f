#include "retex/error.hpp"

namespace retex {

std::string_view error_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::UnknownColumn: return "UnknownColumn";
    case ErrorCode::GapTooLarge: return "GapTooLarge";
    case ErrorCode::GapFound: return "GapFound";
    case ErrorCode::SingularFit: return "SingularFit";
    case ErrorCode::DegenerateSeries: return "DegenerateSeries";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::InsufficientHistory: return "InsufficientHistory";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::NegativeThreshold: return "NegativeThreshold";
    case ErrorCode::SizeMismatch: return "SizeMismatch";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::ImageTooLarge: return "ImageTooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message,
             std::optional<std::size_t> row)
    : std::runtime_error(std::string(error_name(code)) + ": " + message),
      code_(code),
      row_(row) {}

}  // namespace retex
