#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace veisim {

// Common base so callers can catch everything veisim raises in one handler.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Message always carries "<source>:<line>: <what>".
class ParseError : public Error {
 public:
  ParseError(const std::string& source, int line, const std::string& what)
      : Error(source + ":" + std::to_string(line) + ": " + what),
        source_(source),
        line_(line) {}

  const std::string& source() const { return source_; }
  int line() const { return line_; }

 private:
  std::string source_;
  int line_;
};

// GPS stream and annotation stream cannot be aligned in time.
class SyncError : public Error {
 public:
  using Error::Error;
};

// Scenario spec rejected; one message per offending field path.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}

  const std::vector<std::string>& issues() const { return issues_; }

 private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string msg = "scenario validation failed:";
    for (const auto& s : issues) msg += "\n  " + s;
    return msg;
  }
  std::vector<std::string> issues_;
};

// Numeric input outside the function's domain (bad latitude, singular force, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

}  // namespace veisim
