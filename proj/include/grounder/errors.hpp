#pragma once

#include <stdexcept>
#include <string>

namespace grounder {

// Stable error codes, printed verbatim by the CLI.
enum class Errc {
  MalformedHeader,
  TruncatedBody,
  UnsupportedFormat,
  MalformedJson,
  MalformedJsonLine,
  DuplicateInstanceId,
  IndexOutOfRange,
  EmptyMask,
  EmptyScene,
  UnknownLabel,
  SyntaxError,
  UndeclaredAnchor,
  ArityError,
  SchemaVersionMismatch,
  UnknownKind,
  MissingAnchor,
  NoCandidates,
  DegeneratePose,
  DegenerateBounds,
  SpecInfeasible,
  UnknownTool,
  ToolDisabled,
  ToolArgError,
  BackendUnreachable,
  NoFinalizeWithinBudget,
  UnmatchedQueryId,
  IoError,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

// True for input-validation failures (CLI exit 1), false for I/O and
// backend failures (CLI exit 2).
bool is_validation_error(Errc code);

}  // namespace grounder
