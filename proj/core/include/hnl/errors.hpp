#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hnl {

// Base class for all library errors.  Errors raised inside expression
// evaluation carry a path to the offending subexpression, built up while the
// exception unwinds through the composite nodes (e.g. "moebius/product[1]").
class Error : public std::runtime_error {
 public:
  explicit Error(std::string message)
      : std::runtime_error(message), message_(std::move(message)) {}

  const std::string& path() const noexcept { return path_; }

  void prepend_path(std::string_view segment) {
    if (path_.empty()) {
      path_.assign(segment);
    } else {
      path_ = std::string(segment) + "/" + path_;
    }
    full_ = message_ + " [at " + path_ + "]";
  }

  const char* what() const noexcept override {
    return full_.empty() ? message_.c_str() : full_.c_str();
  }

 private:
  std::string message_;
  std::string path_;
  std::string full_;
};

// Input text failed to parse or violated a schema.
class ParseError : public Error {
  using Error::Error;
};

// An argument is outside the mathematical domain of the operation
// (z on the real axis for a Weyl transform, alpha outside [0,pi), ...).
class DomainError : public Error {
  using Error::Error;
};

// The value of a subexpression is the point at infinity of the Riemann
// sphere.  Moebius-type parent nodes catch this and continue with the
// appropriate limit; anywhere else it surfaces as an error.
class PoleError : public Error {
  using Error::Error;
};

// A genuinely indeterminate form (0 * inf) was met during evaluation.
class IndeterminateError : public Error {
  using Error::Error;
};

// A Livsic-type normalization precondition failed (e.g. s(i) != 0).
class NormalizationError : public Error {
  using Error::Error;
};

// A class precondition failed (the function does not belong to the
// Donoghue class the operation requires).
class ClassError : public Error {
  using Error::Error;
};

// z is an eigenvalue of the model dissipative operator or otherwise outside
// rho(T) ∩ rho(B); the Krein-type resolvent formula degenerates there.
class SpectralPointError : public Error {
  using Error::Error;
};

}  // namespace hnl
