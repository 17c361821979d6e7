#include <doctest.h>

#include <cmath>
#include <functional>
#include <limits>
#include <random>

#include "acceptance/oracles.hpp"
#include "genhilbert/errors.hpp"
#include "genhilbert/real_line.hpp"

using namespace genhilbert;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Eigen::Matrix2d mat(double a, double b, double c, double d) {
  Eigen::Matrix2d m;
  m << a, b, c, d;
  return m;
}

CantorSpec triadic(int depth) {
  CantorSpec s;
  s.maps = {mat(1, 0, 0, 3), mat(1, 2, 0, 3)};
  s.seed = {0, 1};
  s.depth = depth;
  return s;
}

}  // namespace

TEST_CASE("arcs and cross-ratios on RP^1") {
  CHECK(closed_arc_contains({1, -1}, kInf));
  CHECK(!closed_arc_contains({1, -1}, 0));
  CHECK(open_arc_contains({-1, 1}, 0));
  CHECK(!open_arc_contains({-1, 1}, 1));
  CHECK(cross_ratio_rp1(3, -3, -1, 1) == doctest::Approx(4));
  CHECK(cross_ratio_rp1(kInf, 0, 1, 5.5) == doctest::Approx(5.5));
  CHECK(rp1(-kInf) == kInf);
  const auto M = normalizer({2, 5});
  CHECK(std::isinf(M(2)));
  CHECK(M(5) == 0);
  CHECK(M(3) < 0);
  CHECK(M(7) > 0);
  CHECK(normalizer({kInf, 0})(-4) == -4);
}

TEST_CASE("components of Lambda") {
  const RealLambda lam({{3, 4}, {-1, 0}, {6, -5}});
  REQUIRE(lam.components().size() == 3);
  CHECK(lam.contains(kInf));
  CHECK(lam.contains(3.5));
  CHECK(!lam.contains(5));
  CHECK(lam.components()[lam.component_of(1)].lo == 0);
  CHECK(lam.components()[lam.component_of(-3)].lo == -5);
  CHECK_THROWS_AS(lam.component_of(-0.5), AdmissibilityError);
  CHECK_THROWS(RealLambda({{0, 2}, {1, 3}}));
}

TEST_CASE("component distance") {
  for (double a : {2.0, 3.0, 10.0, 1.5}) {
    const RealLambda lam({{-a, -1}, {1, a}});
    const double d = component_distance(lam, lam.component_of(0), lam.component_of(kInf));
    CHECK(std::abs(d - std::log(a)) < 1e-12);
    CHECK(std::abs(2 * std::atanh(1 / std::sqrt(cross_ratio_rp1(a, -a, -1, 1))) - d) < 1e-10);
  }
  const RealLambda lam3({{-3, -1}, {1, 3}});
  CHECK(component_distance(lam3, 0, 1) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK_THROWS(component_distance(Arc{-1, 1}, Arc{1, 3}));
}

TEST_CASE("point distance") {
  const RealLambda disc({{1, -1}});
  CHECK(point_distance(disc, 0, 0.5) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(std::abs(point_distance_brute_force(disc, 0, 0.5) - std::log(3.0)) < 1e-12);

  const RealLambda zi({{0, 0}, {kInf, kInf}});
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> U(-6, 6);
  for (int it = 0; it < 200; ++it) {
    const double x = std::exp(U(rng)), y = std::exp(U(rng));
    CHECK(std::abs(point_distance(zi, x, y) - std::abs(std::log(x / y))) < 1e-12);
    CHECK(std::abs(point_distance(zi, x, -y) - std::abs(std::log(x / y))) < 1e-12);
  }
}

TEST_CASE("endpoint reduction on random configurations") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(0, 1);
  for (int it = 0; it < 100; ++it) {
    const int k = 1 + it % 5;
    std::vector<double> b(2 * k);
    for (auto& x : b) x = -4 + 8 * U(rng);
    std::sort(b.begin(), b.end());
    std::vector<Arc> pieces;
    for (int i = 0; i < k; ++i) pieces.push_back(U(rng) < 0.3 ? Arc{b[2 * i], b[2 * i]} : Arc{b[2 * i], b[2 * i + 1]});
    if (it % 3 == 0) pieces.back().hi = b[0] - 0.5;
    const RealLambda lam(pieces);
    double x, y;
    do x = -6 + 12 * U(rng);
    while (lam.contains(x));
    do y = -6 + 12 * U(rng);
    while (lam.contains(y));
    const double d = point_distance(lam, x, y);
    CHECK(std::abs(d - point_distance_brute_force(lam, x, y, 16)) <= 1e-12);
    CHECK(std::abs(d - oracles::rp1_distance_via_cp1(lam, x, y)) <= 1e-12);
  }
}

TEST_CASE("projection gap") {
  for (double x : {0.5, 2.0, 7.0}) {
    const auto g = hyperbolic_projection_gap(kInf, 0, 1, x);
    CHECK(g.delta == doctest::Approx(std::log(x)).epsilon(1e-14));
    CHECK(std::abs(g.foot_c - std::complex<double>(0, 1)) < 1e-14);
    CHECK(std::abs(g.foot_d - std::complex<double>(0, x)) < 1e-13);
  }
  const auto g = hyperbolic_projection_gap(-1, 3, 0.5, 8);
  CHECK(g.residual < 1e-12);
}

TEST_CASE("the measure mu_{Lambda, I}") {
  // I = (-inf, 0)
  const RealLambda half({{0, kInf}});
  REQUIRE(half.components().size() == 1);
  CHECK(measure(half, 0, {{}, {{1.0 / 3, 1}}}) == doctest::Approx(std::log(3.0)).epsilon(1e-14));

  const RealLambda lam({{0, 1}, {3, kInf}});
  const auto I = lam.component_of(-1), J = lam.component_of(2);
  const double mJ = measure(lam, I, {{J}, {}});
  CHECK(mJ == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  const double d = component_distance(lam, I, J);
  CHECK(mJ == doctest::Approx(2 * std::log(1 / std::tanh(d / 2))).epsilon(1e-12));

  // finite additivity
  const double a = measure(lam, I, {{}, {{0.1, 0.4}}}), b = measure(lam, I, {{}, {{0.5, 1}}}),
               c = measure(lam, I, {{J}, {}});
  CHECK(std::abs(measure(lam, I, {{J}, {{0.1, 0.4}, {0.5, 1}}}) - (a + b + c)) < 1e-12);
  CHECK(std::isinf(nu_measure({kInf, 0}, {0, 1})));
  CHECK_THROWS(measure(lam, I, {{}, {{0.5, 2}}}));
}

TEST_CASE("invariance under real Moebius maps") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-2, 2);
  const RealLambda lam({{-3, -2}, {0, 0}, {1, 2}, {4, 4.5}});
  for (int it = 0; it < 50; ++it) {
    Eigen::Matrix2d g = mat(U(rng), U(rng), U(rng), U(rng));
    if (g.determinant() < 0.2) continue;
    std::vector<Arc> moved;
    for (const auto& p : lam.pieces()) moved.push_back({mobius_apply(g, p.lo), mobius_apply(g, p.hi)});
    const RealLambda glam(moved);
    const double x = 0.5, y = -1;
    CHECK(std::abs(point_distance(glam, mobius_apply(g, x), mobius_apply(g, y)) - point_distance(lam, x, y)) < 1e-9);
    const auto I = lam.component_of(0.5), J = lam.component_of(3);
    const auto gI = glam.component_of(mobius_apply(g, 0.5)), gJ = glam.component_of(mobius_apply(g, 3.0));
    CHECK(std::abs(component_distance(glam, gI, gJ) - component_distance(lam, I, J)) < 1e-9);
    const Arc part{1.2, 1.7}, gpart{mobius_apply(g, 1.2), mobius_apply(g, 1.7)};
    CHECK(std::abs(measure(glam, gI, {{gJ}, {gpart}}) - measure(lam, I, {{J}, {part}})) < 1e-9);
  }
}

TEST_CASE("self-similarities") {
  const SelfSimilarity f(mat(1, 0, 0, 3));
  CHECK(f.attracting() == 0);
  CHECK(std::isinf(f.repelling()));
  CHECK(f.translation_length() == doctest::Approx(std::log(3.0)));
  CHECK(f.preserves(triadic(6).approximant(6)));
  CHECK(!SelfSimilarity(mat(1, 0.5, 0, 3)).preserves(triadic(6).approximant(6)));
  CHECK_THROWS(SelfSimilarity(mat(0, -1, 1, 0)));   // elliptic
  CHECK_THROWS(SelfSimilarity(mat(-1, 0, 0, 3)));   // orientation reversing
  const SelfSimilarity g(mat(2, 1, 1, 1));
  CHECK(std::abs(g(g.attracting()) - g.attracting()) < 1e-14);
  CHECK(std::abs(g(g.repelling()) - g.repelling()) < 1e-14);
  CHECK(triadic(1).open_set_condition());
  CantorSpec overlap;
  overlap.maps = {mat(1, 0, 0, 2), mat(1, 0.8, 0, 2)};
  CHECK(!overlap.open_set_condition());
}

TEST_CASE("Basmajian sums on the triadic Cantor set") {
  const auto reps = basmajian_check(triadic(14), 0);
  REQUIRE(reps.size() == 14);
  const auto oracle = oracles::triadic_gap_sums(14);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    const auto& r = reps[k];
    if (k > 0) CHECK(r.S >= reps[k - 1].S);
    CHECK(std::abs(r.S - oracle[r.depth]) < 1e-11);
    CHECK(std::abs(r.T - r.l) < 1e-12);
    if (r.depth >= 5) CHECK(r.l - r.S <= r.tail_bound + 1e-12);
    CHECK(r.gap_count == (std::size_t{1} << (r.depth - 1)));
  }
}

TEST_CASE("Basmajian identity for a fat invariant set") {
  const auto r = basmajian_identity(RealLambda({{0, kInf}}), SelfSimilarity(mat(1, 0, 0, 3)), 1.0);
  CHECK(r.S == 0);
  CHECK(r.gap_count == 0);
  CHECK(std::abs(r.T - std::log(3.0)) < 1e-12);
  CHECK(std::abs(r.continuous - std::log(3.0)) < 1e-12);
}

TEST_CASE("Basmajian identity on a Schottky limit set") {
  // reflections in the circles |x| = 1, |x| = 4 and |x - 2.2| = 0.6; the limit
  // set lies in [0, inf], so the disks are cut down to that half-line
  const double c = 2.2, rho = 0.6;
  const Eigen::Matrix2d r[3] = {mat(0, 1, 1, 0), mat(0, 16, 1, 0), mat(c, rho * rho - c * c, 1, -c)};
  const Arc disk[3] = {{0, 1}, {4, kInf}, {c - rho, c + rho}};
  auto reflect = [&](int i, const Arc& a) { return Arc{mobius_apply(r[i], a.hi), mobius_apply(r[i], a.lo)}; };

  const double x = (5.48 + std::sqrt(5.48 * 5.48 - 4 * c * c)) / (2 * c);  // fixed by r1 r3
  const SelfSimilarity f(mat(16, 0, 0, 1));                                 // r2 r1
  double prev = -1;
  for (int depth = 2; depth <= 9; ++depth) {
    std::vector<Arc> pieces;
    std::function<void(const Arc&, int, int)> grow = [&](const Arc& a, int last, int k) {
      if (k == depth) {
        pieces.push_back(a);
        return;
      }
      for (int i = 0; i < 3; ++i)
        if (i != last) grow(reflect(i, a), i, k + 1);
    };
    for (int i = 0; i < 3; ++i) grow(disk[i], i, 1);
    REQUIRE(pieces.size() == 3u * (1u << (depth - 1)));
    const auto rep = basmajian_identity(RealLambda(pieces), f, x);
    CHECK(rep.l == doctest::Approx(std::log(16.0)));
    CHECK(std::abs(rep.T - rep.l) < 1e-12);
    CHECK(rep.l - rep.S <= rep.tail_bound + 1e-12);
    CHECK(rep.S >= prev);
    prev = rep.S;
  }
  CHECK(std::log(16.0) - prev < 0.05);
}

TEST_CASE("quasi-Moebius maps and their extension") {
  CHECK_THROWS(QMMap({0, 0.5, 1}, {0, 0.7, 0.6}));
  CHECK_THROWS(QMMap({0, 0.5, 2}, {0, 0.7, 1}));
  const auto G = QMMap::affine_normalized({2, 4, 5, 8}, {-1, 3, 4, 9});
  CHECK(G.src()[0] == 0);
  CHECK(G.src()[1] == 1);
  CHECK(G.dst()[1] == 1);

  const std::vector<double> s = {-1, 0, 0.3, 0.5, 1, 2.5};
  const QMMap I(s, s);
  CHECK(empirical_qm_constant(I, 5000) == 1.0);
  const QMMap F(s, {-1.4, 0, 0.2, 0.6, 1, 2.2});
  const double K = empirical_qm_constant(F, 5000);
  CHECK(K > 1);
  const auto E = qm_extend(F);
  CHECK(E(0.3) == 0.2);
  CHECK(E(10.0) == doctest::Approx(9.7));
  CHECK(std::isinf(E(kInf)));
  CHECK(E.bilipschitz_constant() >= 1);
  CHECK(extension_qm_constant(E, -3, 4, 20000) <= std::pow(K, 8));

  const auto Ls = RealLambda::points({-1, 0, 0.3, 0.5, 1, 2.5, kInf});
  const auto Lt = RealLambda::points({-1.4, 0, 0.2, 0.6, 1, 2.2, kInf});
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> U(-3, 4);
  for (int it = 0; it < 300; ++it) {
    const double a = U(rng), b = U(rng);
    CHECK(std::abs(point_distance(Lt, E(a), E(b)) - point_distance(Ls, a, b)) <= 8 * std::log(K));
  }
}
