#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace tadpost {

// Base of every error raised for bad input or violated preconditions.
// The CLI maps these to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal invariant broke; the CLI maps this to exit code 2.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

#define TADPOST_DEFINE_ERROR(Name) \
  class Name : public Error {      \
   public:                         \
    using Error::Error;            \
  }

TADPOST_DEFINE_ERROR(InvalidArgument);
TADPOST_DEFINE_ERROR(DegenerateInterval);
TADPOST_DEFINE_ERROR(InvalidOverlap);
TADPOST_DEFINE_ERROR(WindowMismatch);
TADPOST_DEFINE_ERROR(EmptySequence);
TADPOST_DEFINE_ERROR(LengthMismatch);
TADPOST_DEFINE_ERROR(DimensionMismatch);
TADPOST_DEFINE_ERROR(ActionIdOutOfRange);
TADPOST_DEFINE_ERROR(EmptyVector);
TADPOST_DEFINE_ERROR(InvalidConfig);
TADPOST_DEFINE_ERROR(VocabularyMismatch);
TADPOST_DEFINE_ERROR(SchemaMismatch);
TADPOST_DEFINE_ERROR(UnknownKey);

#undef TADPOST_DEFINE_ERROR

// Malformed text input. Carries either a 1-based line number or the
// offending configuration key.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  ParseError(const std::string& message, std::string key)
      : Error("key '" + key + "': " + message), key_(std::move(key)) {}
  explicit ParseError(const std::string& message) : Error(message) {}

  std::size_t line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  std::size_t line_ = 0;
  std::string key_;
};

}  // namespace tadpost
