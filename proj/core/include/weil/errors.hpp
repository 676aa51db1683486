#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace weil {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed polynomial, expression, presentation or config text.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class UnknownVariable : public ParseError {
 public:
  UnknownVariable(const std::string& name, std::size_t position)
      : ParseError("unknown variable '" + name + "'", position), name_(name) {}

  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

/// Operands disagree on variable count, arity or shape.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// The presented ideal contains a unit, so the quotient is the zero ring.
class ImproperIdeal : public Error {
 public:
  using Error::Error;
};

class AlgebraMismatch : public Error {
 public:
  using Error::Error;
};

/// psibar does not send the origin to the origin.
class BasePointViolation : public Error {
 public:
  BasePointViolation(std::size_t component, const std::string& constant)
      : Error("component " + std::to_string(component) +
              " of psibar has nonzero constant term " + constant),
        component_(component) {}

  std::size_t component() const noexcept { return component_; }

 private:
  std::size_t component_;
};

/// Some ideal generator does not pull back into the target ideal.
class IdealViolation : public Error {
 public:
  IdealViolation(std::string generator, std::string normal_form)
      : Error("generator " + generator + " pulls back to " + normal_form +
              ", which is not in the target ideal"),
        generator_(std::move(generator)),
        normal_form_(std::move(normal_form)) {}

  const std::string& generator() const noexcept { return generator_; }
  const std::string& normal_form() const noexcept { return normal_form_; }

 private:
  std::string generator_;
  std::string normal_form_;
};

/// A primitive was applied outside its domain (log at 0, division by a
/// non-unit, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exact computation was requested where the value is not rational.
class ScalarModeError : public Error {
 public:
  using Error::Error;
};

/// A non-polynomial map was handed to an operation on the polynomial fragment.
class FragmentViolation : public Error {
 public:
  using Error::Error;
};

/// A result would leave the bounded-degree carrier.
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace weil
