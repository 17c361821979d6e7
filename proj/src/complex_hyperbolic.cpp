#include "genhilbert/complex_hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace genhilbert {

namespace {

// Positive root of x^{d+1} = x + 1 (Newton from 2).
double kronecker_root(int d) {
  double x = 2.0;
  for (int it = 0; it < 100; ++it) {
    const double f = std::pow(x, d + 1) - x - 1;
    const double df = (d + 1) * std::pow(x, d) - 1;
    const double nx = x - f / df;
    if (std::abs(nx - x) < 1e-16) break;
    x = nx;
  }
  return x;
}

}  // namespace

HermitianSpace::HermitianSpace(Eigen::MatrixXcd J, Model model) : J_(std::move(J)), model_(model) {
  if (J_.rows() != J_.cols() || J_.rows() < 2)
    throw DimensionMismatch("Hermitian form must be square of size >= 2");
  if ((J_ - J_.adjoint()).norm() > 1e-12 * std::max(1.0, J_.norm()))
    throw DegenerateInput("form matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(J_);
  const auto& ev = es.eigenvalues();
  const double scale = ev.cwiseAbs().maxCoeff();
  int neg = 0, pos = 0;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-12 * scale) ++neg;
    if (ev(i) > 1e-12 * scale) ++pos;
  }
  if (neg != 1 || pos != J_.rows() - 1) throw DegenerateInput("form does not have signature (n,1)");
}

HermitianSpace HermitianSpace::diagonal(int n) {
  if (n < 1) throw DimensionMismatch("dimension must be >= 1");
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Identity(n + 1, n + 1);
  J(n, n) = -1.0;
  return HermitianSpace(J, Model::diagonal);
}

HermitianSpace HermitianSpace::siegel(int n) {
  if (n < 1) throw DimensionMismatch("dimension must be >= 1");
  Eigen::MatrixXcd J = Eigen::MatrixXcd::Identity(n + 1, n + 1);
  J(0, 0) = 0.0;
  J(n, n) = 0.0;
  J(0, n) = 1.0;
  J(n, 0) = 1.0;
  return HermitianSpace(J, Model::siegel);
}

cplx HermitianSpace::bracket(std::span<const cplx> Z, std::span<const cplx> W) const {
  const auto m = static_cast<std::size_t>(J_.rows());
  if (Z.size() != m || W.size() != m) throw DimensionMismatch("vector size differs from form size");
  if (model_ == Model::diagonal) {
    cplx s = 0;
    for (std::size_t i = 0; i + 1 < m; ++i) s += Z[i] * std::conj(W[i]);
    return s - Z[m - 1] * std::conj(W[m - 1]);
  }
  cplx s = 0;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const cplx Jij = J_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (Jij != cplx(0, 0)) s += Z[i] * Jij * std::conj(W[j]);
    }
  return s;
}

BallPoint::BallPoint(const HermitianSpace& space, HomPoint z, double floor) : z_(std::move(z)) {
  if (!(space.norm2(z_.coords()) < -floor)) throw DegenerateInput("point is not inside the ball");
}

BoundaryPoint::BoundaryPoint(const HermitianSpace& space, HomPoint p, double tol) : p_(std::move(p)) {
  if (std::abs(space.norm2(p_.coords())) > tol) throw DegenerateInput("point is not null");
}

CVec cayley(std::span<const cplx> Z) {
  if (Z.size() < 2) throw DimensionMismatch("need at least 2 coordinates");
  CVec out(Z.begin(), Z.end());
  const std::size_t n = Z.size() - 1;
  const double s = std::numbers::sqrt2 / 2;
  out[0] = (Z[0] + Z[n]) * s;
  out[n] = (Z[0] - Z[n]) * s;
  return out;
}

BallPoint ball_point(const HermitianSpace& diag_space, std::span<const cplx> z) {
  CVec lift(z.begin(), z.end());
  lift.push_back(1.0);
  if (static_cast<int>(lift.size()) != diag_space.dim() + 1)
    throw DimensionMismatch("ball coordinates do not match the space");
  return BallPoint(diag_space, HomPoint(std::move(lift)));
}

std::vector<BoundaryPoint> sample_boundary(const HermitianSpace& space, std::size_t N) {
  if (N == 0) throw DegenerateInput("empty boundary sample");
  if (space.model() == HermitianSpace::Model::custom)
    throw DegenerateInput("boundary sampling needs the diagonal or Siegel model");
  const int n = space.dim();
  std::vector<BoundaryPoint> out;
  out.reserve(N);

  const int d = 2 * n - 2;  // Kronecker dimensions beyond the stratified one
  std::vector<double> alpha(static_cast<std::size_t>(std::max(d, 0)));
  if (d > 0) {
    const double g = kronecker_root(d);
    for (int j = 0; j < d; ++j) alpha[static_cast<std::size_t>(j)] = std::pow(g, -(j + 1));
  }

  for (std::size_t k = 0; k < N; ++k) {
    CVec lift(static_cast<std::size_t>(n) + 1);
    lift[static_cast<std::size_t>(n)] = 1.0;
    if (n == 1) {
      lift[0] = std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(N));
    } else {
      // u in [0,1)^{2n-1}: first coordinate stratified, the rest Kronecker.
      std::vector<double> u(static_cast<std::size_t>(2 * n - 1));
      u[0] = (static_cast<double>(k) + 0.5) / static_cast<double>(N);
      for (int j = 0; j < d; ++j) {
        const double x = 0.5 + static_cast<double>(k) * alpha[static_cast<std::size_t>(j)];
        u[static_cast<std::size_t>(j) + 1] = x - std::floor(x);
      }
      // Squared moduli uniform on the simplex by stick breaking (n-1 cuts).
      std::vector<double> m2(static_cast<std::size_t>(n));
      double rest = 1.0;
      for (int i = 0; i < n - 1; ++i) {
        const double frac = 1.0 - std::pow(1.0 - u[static_cast<std::size_t>(i == 0 ? 0 : n + i)],
                                           1.0 / (n - 1 - i));
        m2[static_cast<std::size_t>(i)] = rest * frac;
        rest -= m2[static_cast<std::size_t>(i)];
      }
      m2[static_cast<std::size_t>(n - 1)] = rest;
      for (int i = 0; i < n; ++i) {
        const double ph = 2 * std::numbers::pi * u[static_cast<std::size_t>(1 + i)];
        lift[static_cast<std::size_t>(i)] = std::polar(std::sqrt(std::max(0.0, m2[static_cast<std::size_t>(i)])), ph);
      }
    }
    if (space.model() == HermitianSpace::Model::siegel) lift = cayley(lift);
    out.emplace_back(space, HomPoint(std::move(lift)));
  }
  return out;
}

HomForm boundary_form(const HermitianSpace& space, const BoundaryPoint& p) {
  const auto m = static_cast<Eigen::Index>(p.coords().size());
  if (m != space.J().rows()) throw DimensionMismatch("boundary point does not match the space");
  Eigen::Map<const Eigen::VectorXcd> v(p.coords().data(), m);
  const Eigen::VectorXcd c = space.J() * v.conjugate();
  return HomForm(CVec(c.data(), c.data() + c.size()));
}

LambdaSet boundary_lambda(const HermitianSpace& space, const std::vector<BoundaryPoint>& pts,
                          std::string label) {
  if (pts.empty()) throw DegenerateInput("empty boundary sample");
  const auto m = static_cast<std::size_t>(space.dim()) + 1;
  CVec rows;
  rows.reserve(pts.size() * m);
  for (const auto& p : pts) {
    const auto f = boundary_form(space, p);
    rows.insert(rows.end(), f.coords().begin(), f.coords().end());
  }
  return LambdaSet::from_rows(space.dim(), rows, std::move(label));
}

cplx hermitian_cross_ratio(const HermitianSpace& space, const BoundaryPoint& p,
                           const BoundaryPoint& p2, const HomPoint& omega, const HomPoint& omega2,
                           const Tolerances& tol) {
  const cplx a = space.bracket(omega.coords(), p.coords());
  const cplx b = space.bracket(omega2.coords(), p2.coords());
  const cplx c = space.bracket(omega.coords(), p2.coords());
  const cplx d = space.bracket(omega2.coords(), p.coords());
  for (const auto& x : {a, b, c, d})
    if (std::abs(x) < tol.admissibility)
      throw AdmissibilityError("point on the tangent hyperplane of a boundary point", 0);
  return a * b / (c * d);
}

double ch_distance_oracle(const HermitianSpace& space, const BallPoint& z, const BallPoint& w) {
  const cplx zw = space.bracket(z.coords(), w.coords());
  const double zz = space.norm2(z.coords()), ww = space.norm2(w.coords());
  const double c2 = std::norm(zw) / (zz * ww);
  return 2.0 * std::acosh(std::sqrt(std::max(1.0, c2)));
}

double cartan_invariant(const HermitianSpace& space, const BoundaryPoint& p,
                        const BoundaryPoint& p2, const HomPoint& omega) {
  if (p.point().projectively_equal(p2.point(), 1e-12))
    throw DegenerateInput("Cartan invariant of a repeated boundary point");
  if (space.norm2(omega.coords()) > 1e-10) throw DegenerateInput("third point outside the closed ball");
  const cplx a = space.bracket(omega.coords(), p.coords());
  const cplx b = space.bracket(p.coords(), p2.coords());
  const cplx c = space.bracket(p2.coords(), omega.coords());
  if (std::abs(a) < 1e-12 || std::abs(b) < 1e-12 || std::abs(c) < 1e-12)
    throw DegenerateInput("degenerate triple for the Cartan invariant");
  const double arg = std::arg(-a * b * c);
  // Rounding can push a value of exactly +-pi/2 just outside the range.
  return std::clamp(arg, -std::numbers::pi / 2, std::numbers::pi / 2);
}

PositiveTypeReport cartan_positive_type(const HermitianSpace& space, const BoundaryPoint& p,
                                        const BoundaryPoint& p2, const HomPoint& omega) {
  const cplx pw = space.bracket(p.coords(), omega.coords());
  const cplx p2w = space.bracket(p2.coords(), omega.coords());
  CVec w(p.coords().size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = p2.coords()[i] / p2w - p.coords()[i] / pw;
  PositiveTypeReport r;
  r.direct = space.norm2(w);
  const cplx trip = space.bracket(omega.coords(), p.coords()) * space.bracket(p.coords(), p2.coords()) *
                    space.bracket(p2.coords(), omega.coords());
  r.formula = -2.0 * trip.real() / (std::norm(pw) * std::norm(p2w));
  return r;
}

GeodesicProjection geodesic_projection(const HermitianSpace& space, const BoundaryPoint& p,
                                       const BoundaryPoint& omega, const BoundaryPoint& omega2) {
  if (omega.point().projectively_equal(omega2.point(), 1e-10))
    throw DegenerateInput("geodesic with coincident endpoints");
  CVec w(omega.coords().begin(), omega.coords().end());
  CVec w2(omega2.coords().begin(), omega2.coords().end());
  const cplx h = space.bracket(w, w2);
  if (std::abs(h) < 1e-12) throw DegenerateInput("geodesic endpoints are not distinct null points");
  const cplx c = -h / std::abs(h);
  for (auto& x : w2) x *= c;
  const double a = std::abs(space.bracket(p.coords(), w));
  const double b = std::abs(space.bracket(p.coords(), w2));
  if (a < 1e-12 || b < 1e-12) throw DegenerateInput("boundary point coincides with a geodesic endpoint");
  const double t = std::sqrt(b / a);
  CVec pi(w.size());
  for (std::size_t i = 0; i < pi.size(); ++i) pi[i] = t * w[i] + w2[i] / t;
  return GeodesicProjection{HomPoint(std::move(pi)), t, std::move(w), std::move(w2)};
}

bool in_bisector(const HermitianSpace& space, std::span<const cplx> z, std::span<const cplx> p0,
                 std::span<const cplx> p1, double rel_tol) {
  const double n0 = space.norm2(p0), n1 = space.norm2(p1);
  if (!(n0 * n1 > 0)) throw DegenerateInput("bisector lifts cannot be normalized to equal self-pairing");
  const double s = std::sqrt(n0 / n1);
  const double a = std::abs(space.bracket(z, p0));
  const double b = s * std::abs(space.bracket(z, p1));
  return std::abs(a - b) <= rel_tol * std::max(a, b);
}

double finsler_norm_hermitian(const HermitianSpace& space, const std::vector<BoundaryPoint>& pts,
                              const TangentVector& v) {
  if (pts.empty()) throw DegenerateInput("empty boundary sample");
  double hi = -std::numeric_limits<double>::infinity(), lo = -hi;
  for (const auto& p : pts) {
    const cplx pw = space.bracket(p.coords(), v.base().coords());
    const double x = (space.bracket(p.coords(), v.dir()) / pw).real();
    hi = std::max(hi, x);
    lo = std::min(lo, x);
  }
  return v.is_zero() ? 0.0 : hi - lo;
}

}  // namespace genhilbert
