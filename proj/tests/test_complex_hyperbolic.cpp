#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "genhilbert/complex_hyperbolic.hpp"
#include "genhilbert/errors.hpp"

using namespace genhilbert;

namespace {

constexpr double kPi = std::numbers::pi;

CVec gauss(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> N;
  CVec v(n);
  for (auto& c : v) c = cplx(N(rng), N(rng));
  return v;
}

BoundaryPoint random_boundary(const HermitianSpace& s, std::mt19937_64& rng) {
  auto v = gauss(rng, s.dim());
  double r = 0;
  for (auto c : v) r += std::norm(c);
  for (auto& c : v) c /= std::sqrt(r);
  v.push_back(1.0);
  return BoundaryPoint(s, HomPoint(v));
}

BallPoint random_interior(const HermitianSpace& s, std::mt19937_64& rng, double rmax) {
  std::uniform_real_distribution<double> U(0, 1);
  auto v = gauss(rng, s.dim());
  double r = 0;
  for (auto c : v) r += std::norm(c);
  const double k = rmax * U(rng) / std::sqrt(r);
  for (auto& c : v) c *= k;
  return ball_point(s, v);
}

// Random element of U(n,1) for the diagonal form: a boost mixing the first
// and last coordinates, then a unitary of the first n coordinates.
Eigen::MatrixXcd random_isometry(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  Eigen::MatrixXcd B = Eigen::MatrixXcd::Identity(n + 1, n + 1);
  const double t = U(rng);
  B(0, 0) = B(n, n) = std::cosh(t);
  B(0, n) = B(n, 0) = std::sinh(t);
  Eigen::MatrixXcd A(n, n);
  const auto g = gauss(rng, n * n);
  for (int i = 0; i < n * n; ++i) A(i / n, i % n) = g[i];
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(A);
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Identity(n + 1, n + 1);
  R.topLeftCorner(n, n) = qr.householderQ() * Eigen::MatrixXcd::Identity(n, n);
  R(n, n) = std::polar(1.0, U(rng));
  return R * B;
}

CVec apply(const Eigen::MatrixXcd& g, std::span<const cplx> v) {
  Eigen::VectorXcd x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x(i) = v[i];
  const Eigen::VectorXcd y = g * x;
  return CVec(y.data(), y.data() + y.size());
}

}  // namespace

TEST_CASE("Hermitian spaces") {
  const auto d = HermitianSpace::diagonal(2);
  const cplx z[] = {0.3, cplx(0, 0.2), 1.0};
  CHECK(d.norm2(z) == doctest::Approx(0.09 + 0.04 - 1));
  CHECK_THROWS(HermitianSpace(Eigen::MatrixXcd::Identity(3, 3)));

  std::mt19937_64 rng(1);
  const auto v = gauss(rng, 3);
  const auto back = cayley(cayley(v));
  for (int i = 0; i < 3; ++i) CHECK(std::abs(back[i] - v[i]) < 1e-15);

  const auto sieg = HermitianSpace::siegel(2);
  for (const auto& p : sample_boundary(sieg, 200)) CHECK(std::abs(sieg.norm2(p.coords())) < 1e-12);
  for (const auto& p : sample_boundary(d, 200)) CHECK(std::abs(d.norm2(p.coords())) < 1e-12);
  CHECK_THROWS(BoundaryPoint(d, HomPoint({0.1, 0.0, 1.0})));
  CHECK_THROWS(ball_point(d, CVec{1.0, 0.5}));
}

TEST_CASE("boundary forms") {
  const auto s = HermitianSpace::diagonal(1);
  const double th = 0.7;
  const BoundaryPoint p(s, HomPoint({std::polar(1.0, th), 1.0}));
  CHECK(boundary_form(s, p).projectively_equal(HomForm({std::polar(1.0, -th), -1.0})));

  std::mt19937_64 rng(2);
  const auto s2 = HermitianSpace::diagonal(2);
  for (int it = 0; it < 500; ++it) {
    const auto q = random_boundary(s2, rng);
    const auto w = random_interior(s2, rng, 0.999);
    CHECK(std::abs(pairing(boundary_form(s2, q), w.point())) > 1e-6);
  }
}

TEST_CASE("Hermitian cross-ratio") {
  const auto s = HermitianSpace::diagonal(1);
  const BoundaryPoint p(s, HomPoint({1.0, 1.0})), q(s, HomPoint({-1.0, 1.0}));
  for (double r : {0.2, 0.6, 0.95}) {
    const cplx cr = hermitian_cross_ratio(s, p, q, affine_point(0.0), affine_point(r));
    CHECK(std::abs(cr) == doctest::Approx((1 + r) / (1 - r)).epsilon(1e-12));
  }

  std::mt19937_64 rng(3);
  const auto s2 = HermitianSpace::diagonal(2);
  double worst = 0;
  for (int it = 0; it < 300; ++it) {
    const auto a = random_boundary(s2, rng), b = random_boundary(s2, rng);
    const auto w = random_interior(s2, rng, 0.9), w2 = random_interior(s2, rng, 0.9);
    const auto g = random_isometry(2, rng);
    const cplx c0 = hermitian_cross_ratio(s2, a, b, w.point(), w2.point());
    const cplx c1 = hermitian_cross_ratio(s2, BoundaryPoint(s2, HomPoint(apply(g, a.coords())), 1e-8),
                                          BoundaryPoint(s2, HomPoint(apply(g, b.coords())), 1e-8),
                                          HomPoint(apply(g, w.coords())), HomPoint(apply(g, w2.coords())));
    worst = std::max(worst, std::abs(c1 - c0) / std::abs(c0));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("complex hyperbolic distance") {
  const auto s = HermitianSpace::diagonal(1);
  const cplx zero[] = {0.0};
  for (double r : {0.1, 0.5, 0.9}) {
    const cplx z[] = {r};
    CHECK(ch_distance_oracle(s, ball_point(s, zero), ball_point(s, z)) ==
          doctest::Approx(2 * std::atanh(r)).epsilon(1e-13));
  }
  // isometry invariance in n = 3
  std::mt19937_64 rng(4);
  const auto s3 = HermitianSpace::diagonal(3);
  for (int it = 0; it < 100; ++it) {
    const auto a = random_interior(s3, rng, 0.8), b = random_interior(s3, rng, 0.8);
    const auto g = random_isometry(3, rng);
    const BallPoint ga(s3, HomPoint(apply(g, a.coords()))), gb(s3, HomPoint(apply(g, b.coords())));
    CHECK(ch_distance_oracle(s3, ga, gb) == doctest::Approx(ch_distance_oracle(s3, a, b)).epsilon(1e-9));
  }
}

TEST_CASE("Cartan invariant and the positive-type vector") {
  std::mt19937_64 rng(5);
  const auto s = HermitianSpace::diagonal(2);
  for (int it = 0; it < 500; ++it) {
    const auto p = random_boundary(s, rng), q = random_boundary(s, rng);
    const auto w = random_interior(s, rng, 0.99);
    const auto rep = cartan_positive_type(s, p, q, w.point());
    CHECK(rep.direct > 0);
    CHECK(rep.direct == doctest::Approx(rep.formula).epsilon(1e-8));
    const double A = cartan_invariant(s, p, q, w.point());
    CHECK(A >= -kPi / 2);
    CHECK(A <= kPi / 2);
  }
  // a chain gives +-pi/2, an R-circle gives 0
  const BoundaryPoint a(s, HomPoint({1.0, 0.0, 1.0})), b(s, HomPoint({-1.0, 0.0, 1.0})),
      c(s, HomPoint({cplx(0, 1), 0.0, 1.0})), r(s, HomPoint({0.0, 1.0, 1.0}));
  CHECK(std::abs(std::abs(cartan_invariant(s, a, b, c.point())) - kPi / 2) < 1e-12);
  CHECK(std::abs(cartan_invariant(s, a, b, r.point())) < 1e-12);
  CHECK_THROWS(cartan_invariant(s, a, b, HomPoint({2.0, 0.0, 1.0})));
}

TEST_CASE("geodesic projection and the modulus of the cross-ratio") {
  std::mt19937_64 rng(6);
  const auto s = HermitianSpace::diagonal(2);
  std::uniform_real_distribution<double> U(0, 2 * kPi);
  for (int it = 0; it < 200; ++it) {
    const auto a = random_boundary(s, rng), b = random_boundary(s, rng), c = random_boundary(s, rng);
    // d shares the projection of c: rotate the part of c orthogonal to a and b
    Eigen::Matrix<cplx, 2, 3> M;
    for (int j = 0; j < 3; ++j) {
      M(0, j) = s.J()(j, j) * std::conj(a.coords()[j]);
      M(1, j) = s.J()(j, j) * std::conj(b.coords()[j]);
    }
    const Eigen::Vector3cd e = Eigen::FullPivLU<Eigen::Matrix<cplx, 2, 3>>(M).kernel().col(0);
    Eigen::Matrix3cd basis;
    for (int j = 0; j < 3; ++j) basis(j, 0) = a.coords()[j], basis(j, 1) = b.coords()[j], basis(j, 2) = e(j);
    Eigen::Vector3cd cv;
    for (int j = 0; j < 3; ++j) cv(j) = c.coords()[j];
    Eigen::Vector3cd x = basis.fullPivLu().solve(cv);
    x(2) *= std::polar(1.0, U(rng));
    const Eigen::Vector3cd dv = basis * x;
    const BoundaryPoint d(s, HomPoint(CVec(dv.data(), dv.data() + 3)), 1e-8);

    const auto pc = geodesic_projection(s, c, a, b), pd = geodesic_projection(s, d, a, b);
    const BallPoint fc(s, pc.point), fd(s, pd.point);
    CHECK(ch_distance_oracle(s, fc, fd) < 1e-6);
    CHECK(std::abs(std::abs(hermitian_cross_ratio(s, c, d, a.point(), b.point())) - 1) < 1e-9);

    // generic d: distance between feet = |ln|HCR||
    const auto g = random_boundary(s, rng);
    const BallPoint fg(s, geodesic_projection(s, g, a, b).point);
    CHECK(ch_distance_oracle(s, fc, fg) ==
          doctest::Approx(std::abs(std::log(std::abs(hermitian_cross_ratio(s, c, g, a.point(), b.point())))))
              .epsilon(1e-7));
  }
}

TEST_CASE("geodesic projection in the disc against a Busemann minimization") {
  const auto s = HermitianSpace::diagonal(1);
  const BoundaryPoint a(s, HomPoint({-1.0, 1.0})), b(s, HomPoint({1.0, 1.0}));
  for (double th : {0.3, 1.0, 2.0, -2.6}) {
    const cplx p = std::polar(1.0, th);
    const auto pr = geodesic_projection(s, BoundaryPoint(s, HomPoint({p, 1.0})), a, b);
    const cplx z = pr.point[0] / pr.point[1];
    // foot = argmin over the diameter of the Busemann function at p
    auto B = [&](double x) { return std::log(std::norm(p - x) / (1 - x * x)); };
    double lo = -0.999999, hi = 0.999999;
    for (int k = 0; k < 200; ++k) {
      const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
      if (B(m1) < B(m2)) hi = m2;
      else lo = m1;
    }
    CHECK(std::abs(z - cplx(0.5 * (lo + hi), 0)) < 1e-6);
  }
}

TEST_CASE("Lambda inside a spinal sphere does not separate the symmetric pair") {
  const auto s = HermitianSpace::diagonal(2);
  const CVec p0 = {0.5, 0.0, 1.0}, p1 = {-0.5, 0.0, 1.0};
  // boundary points with Re z1 = 0
  std::vector<BoundaryPoint> pts;
  for (int i = 0; i < 40; ++i)
    for (int j = 0; j < 12; ++j) {
      const double y = -0.95 + 1.9 * i / 39.0, r = std::sqrt(1 - y * y);
      pts.emplace_back(s, HomPoint({cplx(0, y), std::polar(r, 2 * kPi * j / 12), 1.0}));
    }
  for (const auto& p : pts) CHECK(in_bisector(s, p.coords(), p0, p1));
  CHECK(!in_bisector(s, CVec{0.3, 0.5, 1.0}, p0, p1));
  AdmissiblePair pair(boundary_lambda(s, pts));
  const auto r = separates(pair, HomPoint(p0), HomPoint(p1));
  CHECK(!r.separated);
  CHECK(r.distance < 1e-12);
}

TEST_CASE("Hermitian Finsler norm agrees with the form-family norm") {
  const auto s = HermitianSpace::diagonal(2);
  const auto pts = sample_boundary(s, 3000);
  AdmissiblePair pair(boundary_lambda(s, pts));
  std::mt19937_64 rng(8);
  for (int it = 0; it < 50; ++it) {
    const auto w = random_interior(s, rng, 0.7);
    const TangentVector v(w.point(), gauss(rng, 3));
    CHECK(finsler_norm_hermitian(s, pts, v) == doctest::Approx(finsler_norm(pair, v)).epsilon(1e-10));
  }
}

TEST_CASE("distance ratio is constant in the 2-ball") {
  const auto s = HermitianSpace::diagonal(2);
  AdmissiblePair pair(boundary_lambda(s, sample_boundary(s, 20000)));
  std::mt19937_64 rng(9);
  double lo = 1e9, hi = 0;
  for (int it = 0; it < 20; ++it) {
    const auto a = random_interior(s, rng, 0.5), b = random_interior(s, rng, 0.5);
    const double q = distance(pair, a.point(), b.point()) / ch_distance_oracle(s, a, b);
    lo = std::min(lo, q);
    hi = std::max(hi, q);
  }
  CHECK((hi - lo) / lo < 0.01);
  CHECK(hi <= 1 + 1e-9);  // a sampled sup cannot exceed the full one
}
