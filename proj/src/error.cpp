#include "cseval/error.hpp"

namespace cseval {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownLanguage: return "UnknownLanguage";
    case ErrorCode::UnknownTask: return "UnknownTask";
    case ErrorCode::UnknownProfile: return "UnknownProfile";
    case ErrorCode::UnwritablePath: return "UnwritablePath";
    case ErrorCode::UnreadablePath: return "UnreadablePath";
    case ErrorCode::PrefixViolation: return "PrefixViolation";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::EmptySession: return "EmptySession";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::EmptyCorpus: return "EmptyCorpus";
    case ErrorCode::EmptyReference: return "EmptyReference";
    case ErrorCode::EmptyOutput: return "EmptyOutput";
    case ErrorCode::MissingDuration: return "MissingDuration";
    case ErrorCode::MissingTask: return "MissingTask";
    case ErrorCode::MissingUtterance: return "MissingUtterance";
    case ErrorCode::DMaxMismatch: return "DMaxMismatch";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace cseval
