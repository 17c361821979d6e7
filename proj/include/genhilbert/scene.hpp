#pragma once

// Scene files: one Lambda source plus the queries run against it.
//
//   { "dim": 1,
//     "lambda": [ [[1,0],[0,0]], [[0,0],[1,0]] ],      explicit forms, or
//     "hermitian": "diagonal", "boundary_samples": N,  or
//     "punctures": [[0,0], [1,0], "inf"],              or
//     "real_pieces": [[0,1], [2,2], [5,"inf"]],        or
//     "maps": [[[a,b],[c,d]], ...], "seed": [0,1], "depth": k, "generator": g,
//     "transform": [[z00, z01], [z10, z11]],
//     "points": [...], "pairs": [[0,1]], "tangents": [...], "base": ..., ... }
//
// Complex numbers are [re, im] (a bare number is real, "inf" is infinity).

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "genhilbert/complex_hyperbolic.hpp"
#include "genhilbert/config.hpp"
#include "genhilbert/metric.hpp"
#include "genhilbert/punctured_sphere.hpp"
#include "genhilbert/real_line.hpp"

namespace genhilbert {

enum class SourceKind { forms, boundary, punctures, real_pieces, ifs };

const char* source_name(SourceKind k);

struct TangentQuery {
  CVec point;     // lift
  CVec velocity;  // same length as the lift
};

struct QiQuery {
  std::size_t cusp = 0;
  double r_min = 1e-6, r_max = 1e-2;
  int per_decade = 10;
  int alphas = 64;
  int thetas = 1;
};

struct QmQuery {
  std::vector<double> target;  // images of the (point) pieces, same order
  std::size_t samples = 10000;
  std::size_t pairs = 1000;
  unsigned seed = 1;
};

struct Scene {
  int dim = 1;
  SourceKind source = SourceKind::forms;

  std::vector<CVec> forms;
  std::string hermitian = "diagonal";
  std::size_t boundary_samples = 0;
  std::vector<RiemannPoint> punctures;
  std::vector<Arc> real_pieces;
  CantorSpec ifs;
  std::size_t generator = 0;
  std::optional<double> ifs_x;
  std::vector<double> extra_points;

  std::optional<Eigen::MatrixXcd> transform;

  // queries
  std::vector<CVec> points;          // complex sources: lifts
  std::vector<double> real_points;   // real sources
  std::vector<std::array<std::size_t, 2>> pairs;
  std::vector<TangentQuery> tangents;
  std::optional<CVec> base;
  std::vector<CVec> path;
  std::optional<QiQuery> qi;
  std::optional<QmQuery> qm;

  static Scene from_json(const nlohmann::json& j);
  static Scene load(const std::string& path);
  nlohmann::json to_json() const;

  // FNV-1a over the compact dump of to_json().
  std::string hash() const;

  bool is_real() const noexcept {
    return source == SourceKind::real_pieces || source == SourceKind::ifs;
  }

  // Complex sources. The transform, if any, acts on Lambda and on every point.
  AdmissiblePair pair(const Tolerances& tol) const;
  HomPoint point(const CVec& lift) const;
  CVec transformed(const CVec& v) const;
  PunctureSet puncture_set(const Tolerances& tol) const;

  // Real sources (IFS: approximant at `depth`).
  RealLambda real_lambda() const;

  // Explicit pairs, or (0,1), (2,3), ... by default.
  std::vector<std::array<std::size_t, 2>> point_pairs() const;
};

std::string fnv1a_hex(const std::string& s);

}  // namespace genhilbert
