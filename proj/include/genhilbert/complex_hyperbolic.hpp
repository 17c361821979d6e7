#pragma once

// Signature (n,1) Hermitian geometry: the ball P(V-), its boundary sphere,
// tangent forms at boundary points, and the classical invariants used to
// check the generalized metric against complex hyperbolic space.

#include <vector>

#include <Eigen/Dense>

#include "genhilbert/metric.hpp"
#include "genhilbert/projective.hpp"

namespace genhilbert {

class HermitianSpace {
 public:
  enum class Model { diagonal, siegel, custom };

  // diag(1, ..., 1, -1)
  static HermitianSpace diagonal(int n);
  // J[0][n] = J[n][0] = 1, identity on the middle coordinates.
  static HermitianSpace siegel(int n);
  // Any Hermitian matrix of signature (n,1).
  explicit HermitianSpace(Eigen::MatrixXcd J, Model model = Model::custom);

  int dim() const noexcept { return static_cast<int>(J_.rows()) - 1; }
  Model model() const noexcept { return model_; }
  const Eigen::MatrixXcd& J() const noexcept { return J_; }

  // <Z, W> = sum Z_i J_ij conj(W_j): linear in Z, antilinear in W.
  cplx bracket(std::span<const cplx> Z, std::span<const cplx> W) const;
  double norm2(std::span<const cplx> Z) const { return bracket(Z, Z).real(); }

 private:
  Eigen::MatrixXcd J_;
  Model model_;
};

// Negative point: <Z,Z>/|Z|^2 < -floor.
class BallPoint {
 public:
  BallPoint(const HermitianSpace& space, HomPoint z, double floor = 1e-9);
  const HomPoint& point() const noexcept { return z_; }
  std::span<const cplx> coords() const noexcept { return z_.coords(); }

 private:
  HomPoint z_;
};

// Null point: |<Z,Z>| <= 1e-10 |Z|^2.
class BoundaryPoint {
 public:
  BoundaryPoint(const HermitianSpace& space, HomPoint p, double tol = 1e-10);
  const HomPoint& point() const noexcept { return p_; }
  std::span<const cplx> coords() const noexcept { return p_.coords(); }

 private:
  HomPoint p_;
};

// The Cayley change of basis between the diagonal and Siegel models. It is an
// involution, so one function serves both directions.
CVec cayley(std::span<const cplx> Z);

// Diagonal model interior point (z, 1), |z| < 1.
BallPoint ball_point(const HermitianSpace& diag_space, std::span<const cplx> z);

// Quasi-uniform sample of the boundary sphere, N points. n = 1 uses equally
// spaced angles; n >= 2 a stratified first coordinate and a Kronecker sequence
// for the rest. Siegel spaces get the Cayley image of the diagonal sample.
std::vector<BoundaryPoint> sample_boundary(const HermitianSpace& space, std::size_t N);

// Z -> <Z, p>: the complex tangent hyperplane to the sphere at p.
HomForm boundary_form(const HermitianSpace& space, const BoundaryPoint& p);
LambdaSet boundary_lambda(const HermitianSpace& space, const std::vector<BoundaryPoint>& pts,
                          std::string label = "boundary");

// <w,p><w',p'> / (<w,p'><w',p>)
cplx hermitian_cross_ratio(const HermitianSpace& space, const BoundaryPoint& p,
                           const BoundaryPoint& p2, const HomPoint& omega, const HomPoint& omega2,
                           const Tolerances& tol = {});

// 2 arccosh sqrt(<z,w><w,z> / (<z,z><w,w>))
double ch_distance_oracle(const HermitianSpace& space, const BallPoint& z, const BallPoint& w);

// arg(-<w,p><p,p'><p',w>) for w in the closed ball.
double cartan_invariant(const HermitianSpace& space, const BoundaryPoint& p,
                        const BoundaryPoint& p2, const HomPoint& omega);

struct PositiveTypeReport {
  double direct = 0;   // <w,w> for w = p'/<p',omega> - p/<p,omega>
  double formula = 0;  // -2 Re(<omega,p><p,p'><p',omega>) / (|<p,omega>|^2 |<p',omega>|^2)
};

PositiveTypeReport cartan_positive_type(const HermitianSpace& space, const BoundaryPoint& p,
                                        const BoundaryPoint& p2, const HomPoint& omega);

struct GeodesicProjection {
  HomPoint point;   // t w + w'/t
  double t = 1;
  CVec omega_lift;  // lifts used, with <w, w'> real negative
  CVec omega2_lift;
};

// Orthogonal projection of a boundary point p onto the geodesic with
// endpoints omega, omega'.
GeodesicProjection geodesic_projection(const HermitianSpace& space, const BoundaryPoint& p,
                                       const BoundaryPoint& omega, const BoundaryPoint& omega2);

// |<z, p0>| = |<z, p1>| after rescaling p1 to <p1,p1> = <p0,p0>.
bool in_bisector(const HermitianSpace& space, std::span<const cplx> z, std::span<const cplx> p0,
                 std::span<const cplx> p1, double rel_tol = 1e-8);

// max_{p'} Re<p'/<p',w>, v> - min_p Re<p/<p,w>, v> over boundary points.
double finsler_norm_hermitian(const HermitianSpace& space, const std::vector<BoundaryPoint>& pts,
                              const TangentVector& v);

}  // namespace genhilbert
