#include "grounder/errors.hpp"

namespace grounder {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::MalformedHeader: return "MalformedHeader";
    case Errc::TruncatedBody: return "TruncatedBody";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::MalformedJson: return "MalformedJson";
    case Errc::MalformedJsonLine: return "MalformedJsonLine";
    case Errc::DuplicateInstanceId: return "DuplicateInstanceId";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::EmptyMask: return "EmptyMask";
    case Errc::EmptyScene: return "EmptyScene";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UndeclaredAnchor: return "UndeclaredAnchor";
    case Errc::ArityError: return "ArityError";
    case Errc::SchemaVersionMismatch: return "SchemaVersionMismatch";
    case Errc::UnknownKind: return "UnknownKind";
    case Errc::MissingAnchor: return "MissingAnchor";
    case Errc::NoCandidates: return "NoCandidates";
    case Errc::DegeneratePose: return "DegeneratePose";
    case Errc::DegenerateBounds: return "DegenerateBounds";
    case Errc::SpecInfeasible: return "SpecInfeasible";
    case Errc::UnknownTool: return "UnknownTool";
    case Errc::ToolDisabled: return "ToolDisabled";
    case Errc::ToolArgError: return "ToolArgError";
    case Errc::BackendUnreachable: return "BackendUnreachable";
    case Errc::NoFinalizeWithinBudget: return "NoFinalizeWithinBudget";
    case Errc::UnmatchedQueryId: return "UnmatchedQueryId";
    case Errc::IoError: return "IoError";
  }
  return "UnknownError";
}

bool is_validation_error(Errc code) {
  switch (code) {
    case Errc::IoError:
    case Errc::BackendUnreachable:
    case Errc::NoFinalizeWithinBudget:
      return false;
    default:
      return true;
  }
}

}  // namespace grounder
