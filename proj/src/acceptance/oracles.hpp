#pragma once

// Reference computations used by the acceptance suite. Each one takes a
// route that does not go through the code it is checking.

#include <random>
#include <vector>

#include "genhilbert/metric.hpp"
#include "genhilbert/projective.hpp"
#include "genhilbert/real_line.hpp"

namespace genhilbert::oracles {

// max over (theta, theta') of ln |[phi_theta, phi_theta', 0, r]| for the
// continuous family of unit-circle tangent forms: grid search then golden
// section in each angle.
double disc_two_angle_max(double r);

// Partial sums over depth 1..depth of ln(b/a) for the middle-third gaps
// (a, b) of [0,1] that lie in [1/3, 1], by direct recursion.
std::vector<double> triadic_gap_sums(int depth);

// d_Lambda for Lambda in RP^1 computed as a CP^1 problem: the point forms of
// all piece endpoints plus `interior` samples per piece, fed to the complex
// Funk kernel.
double rp1_distance_via_cp1(const RealLambda& lam, double x, double x2, int interior = 8);

// Standard complex Gaussian vector.
CVec gaussian_vector(std::mt19937_64& rng, std::size_t n);

}  // namespace genhilbert::oracles
