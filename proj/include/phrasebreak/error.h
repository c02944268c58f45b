// phrasebreak/error.h

#pragma once

#include <stdexcept>
#include <string>

namespace phrasebreak {

// Base for every recoverable input/configuration problem. The CLI maps these
// to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string &source, int line, const std::string &what)
      : Error(Format(source, line, what)), source_(source), line_(line) {}

  const std::string &source() const { return source_; }
  int line() const { return line_; }

 private:
  static std::string Format(const std::string &source, int line,
                            const std::string &what) {
    std::string s = source;
    if (line > 0) s += ":" + std::to_string(line);
    return s + ": " + what;
  }

  std::string source_;
  int line_;
};

// Well-formed input that breaks a data-model invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Chunk/frame bookkeeping that does not line up.
class StitchError : public Error {
 public:
  using Error::Error;
};

// Score file declares a frame period other than the one the caller expects.
class PeriodMismatchError : public Error {
 public:
  using Error::Error;
};

// External predictions that cannot be matched to annotation words.
class AlignmentError : public Error {
 public:
  using Error::Error;
};

// Internal consistency failure; maps to exit code 2.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace phrasebreak
