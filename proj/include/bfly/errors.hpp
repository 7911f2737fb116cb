#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace bfly {

// Base class for everything this library throws on purpose.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed input line; carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, uint64_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}
  uint64_t line() const { return line_; }

 private:
  uint64_t line_;
};

class EmptyGraphError : public Error {
 public:
  explicit EmptyGraphError(const std::string& what) : Error(what) {}
};

class ArgumentError : public Error {
 public:
  explicit ArgumentError(const std::string& what) : Error(what) {}
};

// Asking for a wedge sample on a graph that has no wedges.
class NoWedgesError : public Error {
 public:
  explicit NoWedgesError(const std::string& what) : Error(what) {}
};

// A counter or accumulator would wrap; raised instead of returning garbage.
class OverflowError : public Error {
 public:
  explicit OverflowError(const std::string& what) : Error(what) {}
};

// Brute-force oracle refused to run on an input above its size guard.
class SizeGuardError : public Error {
 public:
  explicit SizeGuardError(const std::string& what) : Error(what) {}
};

// An exhaustive case analysis saw a case that cannot happen.
class InternalError : public Error {
 public:
  explicit InternalError(const std::string& what) : Error(what) {}
};

}  // namespace bfly
