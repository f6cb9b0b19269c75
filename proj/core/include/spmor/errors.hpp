#pragma once

#include <stdexcept>
#include <string>

namespace spmor {

// Base class for every failure this library reports. Subclasses split into
// input errors (bad netlists, bad configs; CLI exit code 2) and numerical
// errors (singular matrices, unreachable targets; CLI exit code 3).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// --- input errors ---

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class ValidationError : public Error {
 public:
  using Error::Error;
};

class GridMismatch : public Error {
 public:
  using Error::Error;
};

// --- numerical errors ---

class SingularMatrix : public Error {
 public:
  using Error::Error;
};

class NonPdInductance : public Error {
 public:
  using Error::Error;
};

class PoleOrSingular : public Error {
 public:
  using Error::Error;
};

class ExpansionPointIsPole : public Error {
 public:
  using Error::Error;
};

class SingularInnerG : public Error {
 public:
  using Error::Error;
};

class ReducedInnerGSingular : public Error {
 public:
  using Error::Error;
};

class ReducedPencilSingular : public Error {
 public:
  using Error::Error;
};

class RelationViolated : public Error {
 public:
  using Error::Error;
};

inline bool is_input_error(const Error& e) {
  return dynamic_cast<const ParseError*>(&e) != nullptr ||
         dynamic_cast<const ValidationError*>(&e) != nullptr ||
         dynamic_cast<const GridMismatch*>(&e) != nullptr;
}

}  // namespace spmor
