#pragma once

// The pseudo-metric d_Lambda, its one-sided Funk pieces, the separation test
// and the infinitesimal (Finsler) norm together with its unit ball.

#include <array>
#include <complex>
#include <cstddef>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "genhilbert/config.hpp"
#include "genhilbert/projective.hpp"

namespace genhilbert {

// A form family together with the open set where none of its forms is
// (numerically) zero. Cheap to copy: the family is shared.
class AdmissiblePair {
 public:
  explicit AdmissiblePair(LambdaSet lambda, Tolerances tol = {});
  AdmissiblePair(std::shared_ptr<const LambdaSet> lambda, Tolerances tol);

  const LambdaSet& lambda() const noexcept { return *lambda_; }
  std::shared_ptr<const LambdaSet> lambda_ptr() const noexcept { return lambda_; }
  const Tolerances& tol() const noexcept { return tol_; }
  int dim() const noexcept { return lambda_->dim(); }

  // Same family, other thresholds.
  AdmissiblePair with(const Tolerances& tol) const { return AdmissiblePair(lambda_, tol); }

  bool contains(const HomPoint& omega) const;
  // Throws AdmissibilityError naming the lowest offending form index.
  void require(const HomPoint& omega) const;

 private:
  std::shared_ptr<const LambdaSet> lambda_;
  Tolerances tol_;
};

// v in T_omega, stored in the transversal orthogonal to the canonical lift of
// the base. The norm ignores the component along omega, so that component is
// dropped on construction.
class TangentVector {
 public:
  TangentVector(HomPoint base, CVec dir);
  // Velocity `velocity` of the curve t -> lift + t*velocity, for an arbitrary lift.
  static TangentVector from_chart(std::span<const cplx> lift, std::span<const cplx> velocity);
  // n = 1 affine chart: velocity v at the point z = (z, 1).
  static TangentVector affine(cplx z, cplx v);

  const HomPoint& base() const noexcept { return base_; }
  std::span<const cplx> dir() const noexcept { return dir_; }
  TangentVector scaled(double s) const;
  TangentVector operator+(const TangentVector& o) const;
  TangentVector operator-() const { return scaled(-1.0); }
  bool is_zero() const noexcept;

 private:
  HomPoint base_;
  CVec dir_;
};

// max_phi ln|phi(w) / phi(w')| on canonical lifts. Only the sum
// funk(w, w') + funk(w', w) is independent of the lifts.
double funk(const AdmissiblePair& pair, const HomPoint& omega, const HomPoint& omega2);
// Same with the lifts as given.
double funk(const AdmissiblePair& pair, std::span<const cplx> lift, std::span<const cplx> lift2);

struct DistanceReport {
  double value = 0;
  // Forms realizing the maximal cross-ratio modulus (phi, phi'); lowest index on ties.
  std::size_t phi = 0;
  std::size_t phi2 = 0;
};

DistanceReport distance_report(const AdmissiblePair& pair, const HomPoint& omega,
                               const HomPoint& omega2);
double distance(const AdmissiblePair& pair, const HomPoint& omega, const HomPoint& omega2);

// max over all |Lambda|^2 pairs of ln|CR|, straight from the definition.
double distance_brute_force(const AdmissiblePair& pair, const HomPoint& omega,
                            const HomPoint& omega2);

// Circle in the line (omega omega') through the projected points of Lambda, in
// the affine coordinate zeta that sends omega to 0 and omega' to infinity.
struct WitnessCircle {
  cplx center{0, 0};        // 0 by construction of the chart
  double radius = 0;        // mean |zeta_k|
  double max_rel_residual = 0;  // max | |zeta_k| / radius - 1 |
  std::optional<cplx> fitted_center;  // algebraic circle fit, when >= 3 distinct points
  std::size_t points = 0;
};

struct SeparationResult {
  bool separated = false;
  double distance = 0;
  std::optional<WitnessCircle> witness;  // only when not separated
};

SeparationResult separates(const AdmissiblePair& pair, const HomPoint& omega,
                           const HomPoint& omega2);

struct NormReport {
  double value = 0;
  std::size_t argmax = 0;  // phi' attaining max Re(phi'(v)/phi'(w))
  std::size_t argmin = 0;  // phi attaining the min
};

NormReport finsler_norm_report(const AdmissiblePair& pair, const TangentVector& v);
double finsler_norm(const AdmissiblePair& pair, const TangentVector& v);

struct FiniteDifferenceReport {
  std::vector<double> t;
  std::vector<double> ratios;   // d(w, w + t v) / t
  std::vector<double> errors;   // |ratio - norm|
  double norm = 0;
  double K = 0;                 // max error / t
  double order = 0;             // slope of log error vs log t over the 4 finest steps
};

FiniteDifferenceReport finite_difference_check(const AdmissiblePair& pair, const TangentVector& v,
                                               const std::vector<double>& t_list);

// Unit ball of the Finsler norm at a base point, as the intersection of the
// half-spaces { x_j(v) - x_i(v) <= 1 }, x_k(v) = Re(phi_k(v) / phi_k(w)).
// Tangent vectors are written in real coordinates s in R^{2n} with respect to
// an orthonormal complex basis e_1..e_n of the transversal.
class UnitBallPolytope {
 public:
  const HomPoint& base() const noexcept { return base_; }
  int real_dim() const noexcept { return static_cast<int>(functionals_.cols()); }
  // Distinct functionals x_k as rows (after removing duplicates).
  const Eigen::MatrixXd& functionals() const noexcept { return functionals_; }
  const Eigen::MatrixXcd& basis() const noexcept { return basis_; }

  // Half-spaces are the ordered pairs (i, j), i != j, of distinct functionals.
  std::size_t halfspace_count() const noexcept;
  std::pair<std::size_t, std::size_t> halfspace_pair(std::size_t h) const;
  Eigen::VectorXd halfspace(std::size_t h) const;  // row x_j - x_i

  Eigen::VectorXd to_real(const TangentVector& v) const;
  TangentVector from_real(const Eigen::VectorXd& s) const;

  bool contains(const Eigen::VectorXd& s) const;
  // Same test done literally, one half-space at a time (quadratic).
  bool in_all_halfspaces(const Eigen::VectorXd& s) const;
  double support(const Eigen::VectorXd& s) const;  // = Finsler norm of s

  // n = 1 only: polygon vertices in counter-clockwise order.
  const std::vector<std::array<double, 2>>& vertices() const noexcept { return vertices_; }

  // n = 1 only: rows (dir_re, dir_im, support) at `count` equally spaced unit
  // directions in the real tangent coordinates; support is the norm.
  std::vector<std::array<double, 3>> support_sweep(int count = 720) const;

 private:
  friend UnitBallPolytope unit_ball(const AdmissiblePair&, const HomPoint&);
  UnitBallPolytope(HomPoint base) : base_(std::move(base)) {}

  HomPoint base_;
  Eigen::MatrixXcd basis_;
  Eigen::MatrixXd functionals_;
  std::vector<std::array<double, 2>> vertices_;
};

// Throws UnboundedBall (direction flattened as re, im pairs in C^{n+1}) when
// some nonzero tangent vector has norm zero.
UnitBallPolytope unit_ball(const AdmissiblePair& pair, const HomPoint& base);

struct StrictConvexityReport {
  bool disjoint = false;  // argmax functional sets of u and v are disjoint
  double norm_u = 0, norm_v = 0, norm_mid = 0;
};

StrictConvexityReport strict_convexity_check(const AdmissiblePair& pair, const TangentVector& u,
                                             const TangentVector& v);

// F(w) = d(w0, w) along a path.
std::vector<double> exhaustion_scan(const AdmissiblePair& pair, const HomPoint& base,
                                    const std::vector<HomPoint>& path);

struct SubharmonicProbe {
  double center_value = 0;
  double circle_mean = 0;
  bool ok = false;  // center_value <= circle_mean + 1e-8
};

// Mean of F over the circle center + radius e^{i theta} dir (quadrature
// with `nodes` points) against F(center). `center` is a lift.
SubharmonicProbe subharmonic_probe(const AdmissiblePair& pair, const HomPoint& base,
                                   std::span<const cplx> center, std::span<const cplx> dir,
                                   double radius, int nodes = 64);

}  // namespace genhilbert
