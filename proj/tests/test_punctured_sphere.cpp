#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "genhilbert/errors.hpp"
#include "genhilbert/punctured_sphere.hpp"

using namespace genhilbert;

namespace {

constexpr double kPi = std::numbers::pi;

PunctureSet four() { return PunctureSet({{0.0}, {1.0}, {cplx(0, 1)}, {2.0}}); }

std::vector<double> grid(double a, double b, int n) {
  std::vector<double> g;
  for (int k = 0; k < n; ++k) g.push_back(a + (b - a) * k / n);
  return g;
}

}  // namespace

TEST_CASE("concyclicity") {
  CHECK(!is_concyclic({{0.0}, {1.0}, {cplx(0, 1)}, {2.0}}));
  CHECK(is_concyclic({{1.0}, {cplx(0, 1)}, {-1.0}, {cplx(0, -1)}}));
  CHECK(is_concyclic({{0.0}, {1.0}, RiemannPoint::infinity(), {-3.0}}));
  CHECK(is_concyclic({{0.0}, {1.0}, {cplx(0, 1)}}));
  CHECK_THROWS_AS(is_concyclic({{0.0}, {0.0}, {1.0}, {2.0}}), DegenerateInput);
  CHECK(!four().concyclic());
}

TEST_CASE("punctured Finsler norm") {
  const PunctureSet zi({{0.0}, RiemannPoint::infinity()});
  const cplx z(0.4, -1.3);
  CHECK(finsler_norm_punctured(zi, z, 1.0) == doctest::Approx(std::abs((1.0 / z).real())).epsilon(1e-14));

  // the puncture at 0 alone contributes rho cos(alpha) / r
  const double r = 0.01, th = 0.4, al = 0.9, rho = 2.5;
  CHECK(finsler_norm_punctured(zi, std::polar(r, th), std::polar(rho, th + al)) ==
        doctest::Approx(rho * std::cos(al) / r).epsilon(1e-12));

  // a far puncture p = k e^{i beta} contributes -cos(theta + alpha - beta) / k + O(r)
  const cplx p = std::polar(1.7, 2.2);
  const PunctureSet far({{p}, RiemannPoint::infinity()});
  for (double rr : {1e-3, 1e-5}) {
    const double x = finsler_norm_punctured(far, std::polar(rr, th), std::polar(1.0, th + al));
    CHECK(std::abs(x - std::abs(std::cos(th + al - 2.2)) / 1.7) < 5 * rr);
  }

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-3, 3);
  const auto ps = four();
  for (int it = 0; it < 500; ++it) {
    const cplx m(U(rng), U(rng)), v(U(rng), U(rng));
    const double a = finsler_norm_punctured(ps, m, v);
    const double b = finsler_norm(ps.pair(), TangentVector::affine(m, v));
    CHECK(std::abs(a - b) <= 1e-12 * std::max(1.0, a));
  }
  CHECK_THROWS_AS(finsler_norm_punctured(ps, 1.0, 1.0), AdmissibilityError);
}

TEST_CASE("cusp charts") {
  const auto ps = four();
  const auto ch = cusp_chart(ps, 0);
  CHECK(ch.r_max == doctest::Approx(0.49));
  CHECK(cusp_hyperbolic_norm(ch, 0.1, 0.0, std::cos(kPi / 4), std::sin(kPi / 4) / 0.1) ==
        doctest::Approx(std::sqrt(50.5)).epsilon(1e-14));
  CHECK_THROWS(cusp_hyperbolic_norm(ch, 0.6, 0.0, 1.0, 0.0));
}

TEST_CASE("quasi-isometry scan at a cusp") {
  const auto ps = four();
  std::vector<double> r;
  for (int k = 0; k <= 40; ++k) r.push_back(std::pow(10.0, -6 + 0.1 * k));
  const auto alpha = grid(-kPi, kPi, 64);
  const auto rep = qi_ratio_scan(ps, 0, r, alpha, grid(0, 2 * kPi, 4));
  CHECK(std::isfinite(rep.C));
  CHECK(rep.stable);
  double radial = 0, vertical = 1e9;
  for (const auto& row : rep.rows) {
    CHECK(row.finsler <= rep.C * row.hyperbolic * (1 + 1e-12));
    if (row.alpha == 0 && row.r == r.front()) radial = std::max(radial, std::abs(row.ratio - 1));
    if (std::abs(row.alpha - kPi / 2) < 1e-12) vertical = std::min(vertical, row.ratio);
  }
  CHECK(radial < 1e-2);
  CHECK(vertical > 0.05);

  // cusp at infinity
  const PunctureSet with_inf({{0.0}, {1.0}, {cplx(0, 1)}, RiemannPoint::infinity()});
  const auto rinf = qi_ratio_scan(with_inf, 3, {1e-5, 1e-4, 1e-3}, alpha);
  CHECK(std::isfinite(rinf.C));

  CHECK_THROWS_AS(qi_ratio_scan(PunctureSet({{1.0}, {cplx(0, 1)}, {-1.0}, {cplx(0, -1)}}), 0, r, alpha),
                  DegenerateInput);
}

TEST_CASE("the maximizing puncture is an interval of angles around 0") {
  const auto ps = four();
  const auto alpha = grid(-kPi / 2, kPi / 2, 181);
  for (double th : {0.0, 1.0, 2.5}) {
    const auto mi = maximizer_interval(ps, 0, 1e-4, th, alpha);
    CHECK(mi.is_interval);
    CHECK(mi.contains_zero);
  }
}
