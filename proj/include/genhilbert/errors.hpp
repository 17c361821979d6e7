#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace genhilbert {

// Base of every error raised by the library. The `kind()` string is what the
// CLI reports in its single-line JSON diagnostics.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "error"; }
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "dimension_mismatch"; }
};

// Coincident points, a zero vector, an empty set: inputs for which the
// requested quantity is undefined.
class DegenerateInput : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "degenerate_input"; }
};

// A point lies on (or within the admissibility floor of) a hyperplane of the
// form family, i.e. outside the domain where the metric is defined.
class AdmissibilityError : public Error {
 public:
  AdmissibilityError(const std::string& what, std::size_t form_index)
      : Error(what), form_index_(form_index) {}
  const char* kind() const noexcept override { return "admissibility"; }
  std::size_t form_index() const noexcept { return form_index_; }

 private:
  std::size_t form_index_;
};

class SingularTransform : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "singular_transform"; }
};

// The unit ball of the Finsler norm is unbounded: some nonzero direction has
// norm zero. That direction is carried along in real tangent coordinates.
class UnboundedBall : public Error {
 public:
  UnboundedBall(const std::string& what, std::vector<double> direction)
      : Error(what), direction_(std::move(direction)) {}
  const char* kind() const noexcept override { return "unbounded_ball"; }
  const std::vector<double>& direction() const noexcept { return direction_; }

 private:
  std::vector<double> direction_;
};

class NumericFailure : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "numeric_failure"; }
};

class SchemaError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "schema"; }
};

}  // namespace genhilbert
