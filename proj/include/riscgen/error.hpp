#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace riscgen {

enum class ErrorCode {
  // data errors
  EmptyTable,
  NonBinaryCell,
  SchemaMismatch,
  EmptyScores,
  MissingColumn,
  DegenerateText,
  EmptyCorpus,
  MissingValue,
  MissingEndorsementTemplate,
  ParseError,
  // configuration / usage errors
  InvalidConfig,
  EmptyPresets,
  MissingManifest,
  UnknownPlaceholder,
  DuplicateTemplateId,
  InfeasibleSpec,
  OutputDirNotEmpty,
  IoError,
  // sampling
  RejectionBudgetExhausted,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::NonBinaryCell: return "NonBinaryCell";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::EmptyScores: return "EmptyScores";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::DegenerateText: return "DegenerateText";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::MissingValue: return "MissingValue";
    case ErrorCode::MissingEndorsementTemplate: return "MissingEndorsementTemplate";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyPresets: return "EmptyPresets";
    case ErrorCode::MissingManifest: return "MissingManifest";
    case ErrorCode::UnknownPlaceholder: return "UnknownPlaceholder";
    case ErrorCode::DuplicateTemplateId: return "DuplicateTemplateId";
    case ErrorCode::InfeasibleSpec: return "InfeasibleSpec";
    case ErrorCode::OutputDirNotEmpty: return "OutputDirNotEmpty";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::RejectionBudgetExhausted: return "RejectionBudgetExhausted";
  }
  return "Unknown";
}

/// Process exit code for the CLI: 1 usage/config, 2 data, 3 rejection budget.
constexpr int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::RejectionBudgetExhausted:
      return 3;
    case ErrorCode::InvalidConfig:
    case ErrorCode::EmptyPresets:
    case ErrorCode::MissingManifest:
    case ErrorCode::UnknownPlaceholder:
    case ErrorCode::DuplicateTemplateId:
    case ErrorCode::InfeasibleSpec:
    case ErrorCode::OutputDirNotEmpty:
    case ErrorCode::IoError:
      return 1;
    default:
      return 2;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace riscgen
