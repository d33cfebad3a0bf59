#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bitsel {

// Error taxonomy shared by the whole library. The C API and the CLI map
// these onto status codes / exit codes, so every throw site picks a Kind.
enum class ErrorKind {
  invalid_input,   // caller violated a precondition (length mismatch, bad range, ...)
  no_information,  // string has probability zero under the measure
  truncated_code,  // code stream ended before the requested symbol count
  parse,           // malformed descriptor / config / file content
  io,              // filesystem failure
  config,          // experiment config rejected (scenario preconditions)
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// Probability-zero symbol while coding or evaluating; `position` is 1-based.
class NoInformationError : public Error {
 public:
  NoInformationError(uint64_t position, const std::string& what)
      : Error(ErrorKind::no_information, what), position_(position) {}
  uint64_t position() const noexcept { return position_; }

 private:
  uint64_t position_;
};

// Code exhausted after `recovered` source symbols.
class TruncatedCodeError : public Error {
 public:
  TruncatedCodeError(uint64_t recovered, const std::string& what)
      : Error(ErrorKind::truncated_code, what), recovered_(recovered) {}
  uint64_t recovered() const noexcept { return recovered_; }

 private:
  uint64_t recovered_;
};

[[noreturn]] inline void throw_invalid(const std::string& what) {
  throw Error(ErrorKind::invalid_input, what);
}

}  // namespace bitsel
