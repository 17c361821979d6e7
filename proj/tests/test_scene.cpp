#include <doctest.h>

#include <cmath>
#include <cstring>

#include "genhilbert/errors.hpp"
#include "genhilbert/scene.hpp"

using namespace genhilbert;
using nlohmann::json;

TEST_CASE("fnv1a") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("points: lifts, affine coordinates and scalars") {
  const auto s = Scene::from_json(json::parse(R"({
    "dim": 1, "lambda": [[[1,0],[0,0]], [[0,0],[1,0]]],
    "points": [2, [[6, 0]], [[3, 0], [1, 0]], [[1, 1]]] })"));
  REQUIRE(s.points.size() == 4);
  const Tolerances tol;
  const auto P = s.pair(tol);
  const double d = distance(P, s.point(s.points[0]), s.point(s.points[1]));
  CHECK(d == doctest::Approx(std::log(3.0)).epsilon(1e-14));
  CHECK(distance(P, s.point(s.points[2]), s.point(s.points[1])) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("exactly one Lambda source") {
  CHECK_THROWS_AS(Scene::from_json(json::parse(R"({"dim": 1})")), SchemaError);
  CHECK_THROWS_AS(Scene::from_json(json::parse(
                      R"({"dim": 1, "punctures": [0, 1, 2], "real_pieces": [[0, 1]]})")),
                  SchemaError);
  CHECK_THROWS_AS(Scene::from_json(json::parse(R"({"dim": 1, "lambda": [[1, 2, 3]]})")), SchemaError);
  CHECK_THROWS_AS(Scene::from_json(json::parse(R"([1, 2])")), SchemaError);
  CHECK_THROWS_AS(Scene::from_json(json::parse(R"({"dim": 2, "real_pieces": [[0, 1]]})")), SchemaError);
  CHECK_THROWS_AS(Scene::from_json(json::parse(
                      R"({"dim": 1, "real_pieces": [[0, 0]], "qm": {"target": [0, 1]}})")),
                  SchemaError);
}

TEST_CASE("infinity") {
  const auto s = Scene::from_json(json::parse(R"({"dim": 1, "punctures": [0, 1, "inf"]})"));
  REQUIRE(s.punctures.size() == 3);
  CHECK(s.punctures[2].inf);
  const auto r = Scene::from_json(json::parse(R"({"dim": 1, "real_pieces": [[3, "inf"], [0, 1]]})"));
  CHECK(std::isinf(r.real_pieces[0].hi));
  CHECK(r.real_lambda().contains(1e300));
}

TEST_CASE("the transform moves Lambda and the points together") {
  const char* base = R"({"dim": 1, "lambda": [[[1,0],[0,0]], [[1,0],[-1,0]], [[0,0],[1,0]]],
                         "points": [[[2,0.5]], [[-1,3]]]})";
  auto j = json::parse(base);
  const auto s = Scene::from_json(j);
  j["transform"] = json::parse(R"([[[2,1],[0,0]], [[1,0],[1,-1]]])");
  const auto t = Scene::from_json(j);
  const Tolerances tol;
  const double d0 = distance(s.pair(tol), s.point(s.points[0]), s.point(s.points[1]));
  const double d1 = distance(t.pair(tol), t.point(t.points[0]), t.point(t.points[1]));
  CHECK(std::abs(d0 - d1) < 1e-12);
  CHECK(t.hash() != s.hash());
  j["transform"] = json::parse(R"([[1,0],[0,1],[0,0]])");
  CHECK_THROWS_AS(Scene::from_json(j), SchemaError);
}

TEST_CASE("round trip through to_json") {
  for (const char* text : {
           R"({"dim": 1, "lambda": [[[1,0],[0,0]], [[0,0],[1,0]]], "points": [2, 6]})",
           R"({"dim": 2, "hermitian": "siegel", "boundary_samples": 50,
               "points": [[[0.1,0],[0.2,0.1]], [[-0.3,0.2],[0,0]]], "pairs": [[1,0]]})",
           R"({"dim": 1, "punctures": [0, 1, [0, 1], "inf"], "base": [[0.5, 0.5]],
               "tangents": [{"point": [[0.5,0.5]], "velocity": [1, 0]}],
               "qiscan": {"cusp": 3, "r_min": 1e-5, "r_max": 1e-3, "per_decade": 4, "alphas": 8, "thetas": 2}})",
           R"({"dim": 1, "maps": [[[1,0],[0,3]], [[1,2],[0,3]]], "seed": [0,1], "depth": 5, "generator": 0})",
           R"({"dim": 1, "real_pieces": [[0,0], [0.5,0.5], [1,1]],
               "qm": {"target": [0, 0.4, 1], "samples": 10, "pairs": 5, "seed": 9}})"}) {
    const auto s = Scene::from_json(json::parse(text));
    const auto j = s.to_json();
    const auto s2 = Scene::from_json(j);
    CHECK(s2.to_json() == j);
    CHECK(s2.hash() == s.hash());
    CHECK(s.hash().size() == 16);

    if (!s.is_real() && s.points.size() >= 2) {
      const Tolerances tol;
      for (const auto& ij : s.point_pairs()) {
        const double a = distance(s.pair(tol), s.point(s.points[ij[0]]), s.point(s.points[ij[1]]));
        const double b = distance(s2.pair(tol), s2.point(s2.points[ij[0]]), s2.point(s2.points[ij[1]]));
        CHECK(std::memcmp(&a, &b, sizeof a) == 0);
      }
    }
    if (s.is_real()) {
      CHECK(s.real_lambda().components().size() == s2.real_lambda().components().size());
    }
  }
}

TEST_CASE("default pairs") {
  const auto s = Scene::from_json(json::parse(
      R"({"dim": 1, "lambda": [[[1,0],[0,0]], [[0,0],[1,0]]], "points": [1, 2, 3, 4, 5]})"));
  const auto p = s.point_pairs();
  REQUIRE(p.size() == 2);
  CHECK(p[0] == std::array<std::size_t, 2>{0, 1});
  CHECK(p[1] == std::array<std::size_t, 2>{2, 3});
}
