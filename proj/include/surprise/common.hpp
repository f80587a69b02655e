#pragma once

#include <stdexcept>
#include <string>

namespace surprise {

// Input could not be tokenized/decoded. line is 1-based, 0 if unknown.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line = 0)
      : std::runtime_error(line ? "line " + std::to_string(line) + ": " + msg
                                : std::move(msg)),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Input parsed but violates a structural requirement (self-loop, bad id, ...).
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A size/limit guard tripped (oracle too large, solver over capacity).
class GuardError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Internal inconsistency; indicates a bug, not bad input.
class InvariantError : public std::logic_error {
  using std::logic_error::logic_error;
};

// Soft time budget expired inside a solver.
class TimeLimitError : public std::runtime_error {
 public:
  TimeLimitError() : std::runtime_error("time limit exceeded") {}
};

}  // namespace surprise
