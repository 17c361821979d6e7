#include "genhilbert/scene.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>

#include "genhilbert/errors.hpp"

namespace genhilbert {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double real_of(const json& j, const char* what) {
  if (j.is_string() && (j == "inf" || j == "infinity")) return kInf;
  if (!j.is_number()) throw SchemaError(std::string(what) + ": expected a number or \"inf\"");
  return j.get<double>();
}

json real_to(double x) {
  if (std::isinf(x)) return "inf";
  return x;
}

cplx complex_of(const json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw SchemaError(std::string(what) + ": expected [re, im]");
}

json complex_to(cplx z) { return json::array({z.real(), z.imag()}); }

bool is_scalar(const json& j) {
  return j.is_number() || j.is_string() ||
         (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number());
}

// A point is a list of dim+1 (lift) or dim (affine) complex numbers; for
// dim = 1 a single complex number or "inf" also works.
CVec lift_of(const json& j, int dim, const char* what) {
  if (dim == 1 && is_scalar(j)) {
    if (j.is_string()) {
      if (j != "inf" && j != "infinity") throw SchemaError(std::string(what) + ": bad point");
      return {1.0, 0.0};
    }
    return {complex_of(j, what), 1.0};
  }
  if (!j.is_array()) throw SchemaError(std::string(what) + ": expected a point");
  CVec v;
  for (const auto& c : j) v.push_back(complex_of(c, what));
  if (v.size() == static_cast<std::size_t>(dim)) v.push_back(1.0);
  if (v.size() != static_cast<std::size_t>(dim) + 1)
    throw SchemaError(std::string(what) + ": wrong number of coordinates");
  return v;
}

json lift_to(const CVec& v) {
  json a = json::array();
  for (auto c : v) a.push_back(complex_to(c));
  return a;
}

Arc arc_of(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw SchemaError(std::string(what) + ": expected [lo, hi]");
  return {rp1(real_of(j[0], what)), rp1(real_of(j[1], what))};
}

Eigen::Matrix2d map_of(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() || j[0].size() != 2 ||
      j[1].size() != 2)
    throw SchemaError("maps: expected [[a,b],[c,d]]");
  Eigen::Matrix2d m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = real_of(j[r][c], "maps");
  return m;
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw SchemaError(std::string(key) + ": wrong type");
  }
}

}  // namespace

const char* source_name(SourceKind k) {
  switch (k) {
    case SourceKind::forms: return "lambda";
    case SourceKind::boundary: return "hermitian";
    case SourceKind::punctures: return "punctures";
    case SourceKind::real_pieces: return "real_pieces";
    case SourceKind::ifs: return "maps";
  }
  return "?";
}

std::string fnv1a_hex(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Scene Scene::from_json(const json& j) {
  if (!j.is_object()) throw SchemaError("scene must be a JSON object");
  Scene s;
  s.dim = get_or<int>(j, "dim", 1);
  if (s.dim < 1) throw SchemaError("dim must be >= 1");

  int sources = 0;
  if (j.contains("lambda")) {
    ++sources;
    s.source = SourceKind::forms;
    if (!j["lambda"].is_array() || j["lambda"].empty()) throw SchemaError("lambda: expected forms");
    for (const auto& f : j["lambda"]) {
      if (!f.is_array() || f.size() != static_cast<std::size_t>(s.dim) + 1)
        throw SchemaError("lambda: each form needs dim+1 coefficients");
      CVec v;
      for (const auto& c : f) v.push_back(complex_of(c, "lambda"));
      s.forms.push_back(std::move(v));
    }
  }
  if (j.contains("hermitian")) {
    ++sources;
    s.source = SourceKind::boundary;
    s.hermitian = get_or<std::string>(j, "hermitian", "diagonal");
    if (s.hermitian != "diagonal" && s.hermitian != "siegel")
      throw SchemaError("hermitian: expected \"diagonal\" or \"siegel\"");
    s.boundary_samples = get_or<std::size_t>(j, "boundary_samples", 0);
    if (s.boundary_samples == 0) throw SchemaError("boundary_samples must be positive");
  } else if (j.contains("boundary_samples")) {
    throw SchemaError("boundary_samples without hermitian");
  }
  if (j.contains("punctures")) {
    ++sources;
    s.source = SourceKind::punctures;
    if (s.dim != 1) throw SchemaError("punctures need dim 1");
    if (!j["punctures"].is_array()) throw SchemaError("punctures: expected a list");
    for (const auto& p : j["punctures"]) {
      if (p.is_string()) {
        if (p != "inf" && p != "infinity") throw SchemaError("punctures: bad entry");
        s.punctures.push_back(RiemannPoint::infinity());
      } else {
        s.punctures.push_back({complex_of(p, "punctures"), false});
      }
    }
  }
  if (j.contains("real_pieces")) {
    ++sources;
    s.source = SourceKind::real_pieces;
    if (!j["real_pieces"].is_array()) throw SchemaError("real_pieces: expected a list");
    for (const auto& a : j["real_pieces"]) s.real_pieces.push_back(arc_of(a, "real_pieces"));
  }
  if (j.contains("maps")) {
    ++sources;
    s.source = SourceKind::ifs;
    if (!j["maps"].is_array() || j["maps"].empty()) throw SchemaError("maps: expected a list");
    for (const auto& m : j["maps"]) s.ifs.maps.push_back(map_of(m));
    if (j.contains("seed")) s.ifs.seed = arc_of(j["seed"], "seed");
    s.ifs.depth = get_or<int>(j, "depth", 10);
    if (s.ifs.depth < 1) throw SchemaError("depth must be >= 1");
    s.generator = get_or<std::size_t>(j, "generator", 0);
    if (s.generator >= s.ifs.maps.size()) throw SchemaError("generator out of range");
    if (j.contains("x")) s.ifs_x = real_of(j["x"], "x");
    if (j.contains("extra_points"))
      for (const auto& x : j["extra_points"]) s.extra_points.push_back(real_of(x, "extra_points"));
  }
  if (sources != 1) throw SchemaError("scene needs exactly one Lambda source");
  if (s.is_real() && s.dim != 1) throw SchemaError("real sources need dim 1");

  if (j.contains("transform")) {
    if (s.is_real()) throw SchemaError("transform applies to complex sources only");
    const auto& t = j["transform"];
    const auto n = static_cast<std::size_t>(s.dim) + 1;
    if (!t.is_array() || t.size() != n) throw SchemaError("transform: expected (dim+1) rows");
    Eigen::MatrixXcd m(n, n);
    for (std::size_t r = 0; r < n; ++r) {
      if (!t[r].is_array() || t[r].size() != n) throw SchemaError("transform: bad row");
      for (std::size_t c = 0; c < n; ++c) m(r, c) = complex_of(t[r][c], "transform");
    }
    s.transform = m;
  }

  if (j.contains("points")) {
    if (!j["points"].is_array()) throw SchemaError("points: expected a list");
    for (const auto& p : j["points"]) {
      if (s.is_real())
        s.real_points.push_back(rp1(real_of(p, "points")));
      else
        s.points.push_back(lift_of(p, s.dim, "points"));
    }
  }
  if (j.contains("pairs")) {
    for (const auto& p : j["pairs"]) {
      if (!p.is_array() || p.size() != 2) throw SchemaError("pairs: expected [i, j]");
      std::array<std::size_t, 2> ij{p[0].get<std::size_t>(), p[1].get<std::size_t>()};
      const auto count = s.is_real() ? s.real_points.size() : s.points.size();
      if (ij[0] >= count || ij[1] >= count) throw SchemaError("pairs: index out of range");
      s.pairs.push_back(ij);
    }
  }
  if (j.contains("tangents")) {
    if (s.is_real()) throw SchemaError("tangents need a complex source");
    for (const auto& t : j["tangents"]) {
      if (!t.is_object() || !t.contains("point") || !t.contains("velocity"))
        throw SchemaError("tangents: expected {point, velocity}");
      TangentQuery q;
      q.point = lift_of(t["point"], s.dim, "tangents.point");
      if (s.dim == 1 && is_scalar(t["velocity"])) {
        // affine velocity in the chart of the point
        q.velocity = {complex_of(t["velocity"], "tangents.velocity"), 0.0};
        if (std::abs(q.point[1]) > 0) q.velocity[0] *= q.point[1];
      } else {
        q.velocity = lift_of(t["velocity"], s.dim, "tangents.velocity");
        if (t["velocity"].size() == static_cast<std::size_t>(s.dim)) q.velocity.back() = 0.0;
      }
      s.tangents.push_back(std::move(q));
    }
  }
  if (j.contains("base")) {
    if (s.is_real()) throw SchemaError("base needs a complex source");
    s.base = lift_of(j["base"], s.dim, "base");
  }
  if (j.contains("path")) {
    if (s.is_real()) throw SchemaError("path needs a complex source");
    for (const auto& p : j["path"]) s.path.push_back(lift_of(p, s.dim, "path"));
  }
  if (j.contains("qiscan")) {
    if (s.source != SourceKind::punctures) throw SchemaError("qiscan needs punctures");
    const auto& q = j["qiscan"];
    QiQuery qi;
    qi.cusp = get_or<std::size_t>(q, "cusp", 0);
    qi.r_min = get_or<double>(q, "r_min", qi.r_min);
    qi.r_max = get_or<double>(q, "r_max", qi.r_max);
    qi.per_decade = get_or<int>(q, "per_decade", qi.per_decade);
    qi.alphas = get_or<int>(q, "alphas", qi.alphas);
    qi.thetas = get_or<int>(q, "thetas", qi.thetas);
    if (qi.cusp >= s.punctures.size()) throw SchemaError("qiscan.cusp out of range");
    if (!(qi.r_min > 0 && qi.r_max > qi.r_min) || qi.per_decade < 1 || qi.alphas < 1 ||
        qi.thetas < 1)
      throw SchemaError("qiscan: bad grid");
    s.qi = qi;
  }
  if (j.contains("qm")) {
    if (s.source != SourceKind::real_pieces) throw SchemaError("qm needs real_pieces");
    const auto& q = j["qm"];
    QmQuery qm;
    if (!q.contains("target")) throw SchemaError("qm.target missing");
    for (const auto& x : q["target"]) qm.target.push_back(real_of(x, "qm.target"));
    qm.samples = get_or<std::size_t>(q, "samples", qm.samples);
    qm.pairs = get_or<std::size_t>(q, "pairs", qm.pairs);
    qm.seed = get_or<unsigned>(q, "seed", qm.seed);
    if (qm.target.size() != s.real_pieces.size()) throw SchemaError("qm.target: one image per piece");
    s.qm = qm;
  }
  return s;
}

Scene Scene::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open scene file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("scene is not valid JSON: ") + e.what());
  }
  return from_json(j);
}

json Scene::to_json() const {
  json j;
  j["dim"] = dim;
  switch (source) {
    case SourceKind::forms: {
      json a = json::array();
      for (const auto& f : forms) a.push_back(lift_to(f));
      j["lambda"] = a;
      break;
    }
    case SourceKind::boundary:
      j["hermitian"] = hermitian;
      j["boundary_samples"] = boundary_samples;
      break;
    case SourceKind::punctures: {
      json a = json::array();
      for (const auto& p : punctures) a.push_back(p.inf ? json("inf") : complex_to(p.z));
      j["punctures"] = a;
      break;
    }
    case SourceKind::real_pieces: {
      json a = json::array();
      for (const auto& p : real_pieces) a.push_back(json::array({real_to(p.lo), real_to(p.hi)}));
      j["real_pieces"] = a;
      break;
    }
    case SourceKind::ifs: {
      json a = json::array();
      for (const auto& m : ifs.maps)
        a.push_back(json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})}));
      j["maps"] = a;
      j["seed"] = json::array({real_to(ifs.seed.lo), real_to(ifs.seed.hi)});
      j["depth"] = ifs.depth;
      j["generator"] = generator;
      if (ifs_x) j["x"] = real_to(*ifs_x);
      if (!extra_points.empty()) {
        json e = json::array();
        for (double x : extra_points) e.push_back(real_to(x));
        j["extra_points"] = e;
      }
      break;
    }
  }
  if (transform) {
    json t = json::array();
    for (Eigen::Index r = 0; r < transform->rows(); ++r) {
      json row = json::array();
      for (Eigen::Index c = 0; c < transform->cols(); ++c) row.push_back(complex_to((*transform)(r, c)));
      t.push_back(row);
    }
    j["transform"] = t;
  }
  if (is_real()) {
    if (!real_points.empty()) {
      json a = json::array();
      for (double x : real_points) a.push_back(real_to(x));
      j["points"] = a;
    }
  } else if (!points.empty()) {
    json a = json::array();
    for (const auto& p : points) a.push_back(lift_to(p));
    j["points"] = a;
  }
  if (!pairs.empty()) {
    json a = json::array();
    for (const auto& p : pairs) a.push_back(json::array({p[0], p[1]}));
    j["pairs"] = a;
  }
  if (!tangents.empty()) {
    json a = json::array();
    for (const auto& t : tangents) a.push_back({{"point", lift_to(t.point)}, {"velocity", lift_to(t.velocity)}});
    j["tangents"] = a;
  }
  if (base) j["base"] = lift_to(*base);
  if (!path.empty()) {
    json a = json::array();
    for (const auto& p : path) a.push_back(lift_to(p));
    j["path"] = a;
  }
  if (qi)
    j["qiscan"] = {{"cusp", qi->cusp},         {"r_min", qi->r_min},   {"r_max", qi->r_max},
                   {"per_decade", qi->per_decade}, {"alphas", qi->alphas}, {"thetas", qi->thetas}};
  if (qm) {
    json t = json::array();
    for (double x : qm->target) t.push_back(real_to(x));
    j["qm"] = {{"target", t}, {"samples", qm->samples}, {"pairs", qm->pairs}, {"seed", qm->seed}};
  }
  return j;
}

std::string Scene::hash() const { return fnv1a_hex(to_json().dump()); }

CVec Scene::transformed(const CVec& v) const {
  if (!transform) return v;
  Eigen::Map<const Eigen::VectorXcd> x(v.data(), static_cast<Eigen::Index>(v.size()));
  const Eigen::VectorXcd y = (*transform) * x;
  return CVec(y.data(), y.data() + y.size());
}

HomPoint Scene::point(const CVec& lift) const { return HomPoint(transformed(lift)); }

AdmissiblePair Scene::pair(const Tolerances& tol) const {
  switch (source) {
    case SourceKind::forms: {
      CVec rows;
      for (const auto& f : forms) rows.insert(rows.end(), f.begin(), f.end());
      auto lam = LambdaSet::from_rows(dim, rows, "scene");
      if (transform) lam = apply_transform(ProjTransform(*transform), lam);
      return AdmissiblePair(std::move(lam), tol);
    }
    case SourceKind::boundary: {
      const auto space =
          hermitian == "siegel" ? HermitianSpace::siegel(dim) : HermitianSpace::diagonal(dim);
      auto lam = boundary_lambda(space, sample_boundary(space, boundary_samples));
      if (transform) lam = apply_transform(ProjTransform(*transform), lam);
      return AdmissiblePair(std::move(lam), tol);
    }
    case SourceKind::punctures: {
      std::vector<HomForm> f;
      for (const auto& p : punctures) f.push_back(p.form());
      LambdaSet lam(f, "punctures");
      if (transform) lam = apply_transform(ProjTransform(*transform), lam);
      return AdmissiblePair(std::move(lam), tol);
    }
    default:
      throw SchemaError("this query needs a complex Lambda source");
  }
}

PunctureSet Scene::puncture_set(const Tolerances& tol) const {
  if (source != SourceKind::punctures) throw SchemaError("this query needs punctures");
  if (transform) throw SchemaError("transform is not supported with punctured-sphere queries");
  return PunctureSet(punctures, tol);
}

RealLambda Scene::real_lambda() const {
  if (source == SourceKind::real_pieces) return RealLambda(real_pieces);
  if (source == SourceKind::ifs) return ifs.approximant(ifs.depth);
  throw SchemaError("this query needs a real Lambda source");
}

std::vector<std::array<std::size_t, 2>> Scene::point_pairs() const {
  if (!pairs.empty()) return pairs;
  std::vector<std::array<std::size_t, 2>> out;
  const auto n = is_real() ? real_points.size() : points.size();
  for (std::size_t i = 0; i + 1 < n; i += 2) out.push_back({i, i + 1});
  return out;
}

}  // namespace genhilbert
