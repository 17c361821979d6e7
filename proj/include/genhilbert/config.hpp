#pragma once

#include <cstddef>

namespace genhilbert {

// Numerical thresholds shared by every module. Each operation takes one of
// these by value with the defaults below, so a caller can override any of
// them for a single call.
struct Tolerances {
  // Minimum |phi(omega)| for unit-normalized phi and omega.
  double admissibility = 1e-9;
  // distance(omega, omega') above this means the pair is separated.
  double separation = 1e-8;
  // Width of the "attains the max" band for argmax sets.
  double argmax = 1e-9;
  // Projective equality of canonical representatives.
  double projective_equal = 1e-12;
  // Worker threads for max-reductions over the form family; 1 = sequential.
  std::size_t threads = 1;
};

}  // namespace genhilbert
