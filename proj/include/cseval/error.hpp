#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace cseval {

enum class ErrorCode {
  MalformedRecord,
  DuplicateId,
  UnknownLanguage,
  UnknownTask,
  UnknownProfile,
  UnwritablePath,
  UnreadablePath,
  PrefixViolation,
  NonMonotoneTime,
  EmptySession,
  LengthMismatch,
  EmptyCorpus,
  EmptyReference,
  EmptyOutput,
  MissingDuration,
  MissingTask,
  MissingUtterance,
  DMaxMismatch,
  EmptyInput,
  InvalidArgument,
};

const char* error_code_name(ErrorCode code);

// Data errors raised by every module. The CLI maps these to exit status 2.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

  // File/line context, filled in by readers.
  const std::optional<std::string>& file() const { return file_; }
  std::optional<std::size_t> line() const { return line_; }

  Error& with_location(std::string file, std::optional<std::size_t> line = {}) {
    file_ = std::move(file);
    line_ = line;
    return *this;
  }

 private:
  ErrorCode code_;
  std::optional<std::string> file_;
  std::optional<std::size_t> line_;
};

}  // namespace cseval
