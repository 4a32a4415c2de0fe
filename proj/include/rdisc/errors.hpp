#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace rdisc {

/// Caller violated a precondition (mismatched tables, unknown variable,
/// out-of-range degree, ...). Not a mathematical statement about the input.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact division failed. For the factorization pipeline this falsifies a
/// structural claim, so the offending term is kept as a witness.
class NotDivisibleError : public std::runtime_error {
 public:
  explicit NotDivisibleError(std::string failing_term)
      : std::runtime_error("exact division failed at term " + failing_term),
        failing_term_(std::move(failing_term)) {}
  const std::string& failing_term() const { return failing_term_; }

 private:
  std::string failing_term_;
};

/// Square-root extraction failed; the witness describes the first bad step.
class NotASquareError : public std::runtime_error {
 public:
  explicit NotASquareError(std::string witness)
      : std::runtime_error("polynomial is not a perfect square: " + witness),
        witness_(std::move(witness)) {}
  const std::string& witness() const { return witness_; }

 private:
  std::string witness_;
};

/// A specialization dropped the leading coefficient, so the evaluation
/// homomorphism for resultants does not apply; the caller must resample.
class LeadingCoefficientVanishedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Text that does not match the canonical polynomial grammar.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, int column, const std::string& what)
      : std::runtime_error("parse error at " + std::to_string(line) + ":" +
                           std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace rdisc
