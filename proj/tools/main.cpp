// genhilbert: batch front-end over scene files.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "acceptance/acceptance.hpp"
#include "genhilbert/errors.hpp"
#include "genhilbert/scene.hpp"

using namespace genhilbert;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFail = 1, kSchema = 2, kAdmissibility = 3, kNumeric = 4 };

struct Options {
  std::string scene_path;
  std::string out_path;
  std::string format;  // empty: the subcommand's default
  double tol = Tolerances{}.admissibility;
  std::size_t threads = 1;
  bool no_provenance = false;
};

std::string num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json jnum(double x) {
  if (std::isfinite(x)) return x;
  return num(x);
}

std::string timestamp() {
  const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Run {
 public:
  Run(const Options& o, std::string command) : opt_(o), cmd_(std::move(command)) {
    tol_.admissibility = o.tol;
    tol_.threads = std::max<std::size_t>(1, o.threads);
  }

  void load() {
    if (opt_.scene_path.empty()) throw SchemaError("--scene is required");
    scene_ = Scene::load(opt_.scene_path);
  }

  const Scene& scene() const { return scene_; }
  const Tolerances& tol() const { return tol_; }

  std::string format(const char* fallback) const {
    return opt_.format.empty() ? std::string(fallback) : opt_.format;
  }

  std::string provenance_text() const {
    std::string s = std::string("genhilbert ") + GENHILBERT_VERSION + " " + cmd_ + " scene " + scene_.hash();
    if (!opt_.no_provenance) s += " generated " + timestamp();
    return s;
  }

  json provenance_json() const {
    json p = {{"tool", "genhilbert"}, {"version", GENHILBERT_VERSION}, {"command", cmd_},
              {"scene_hash", scene_.hash()}};
    if (!opt_.no_provenance) p["generated"] = timestamp();
    return p;
  }

  // CSV with a provenance comment line and a header row.
  void csv(const std::string& header, const std::vector<std::vector<std::string>>& rows,
           const std::vector<std::string>& trailer = {}) {
    std::ostringstream os;
    os << "# " << provenance_text() << "\n" << header << "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
      os << "\n";
    }
    for (const auto& t : trailer) os << "# " << t << "\n";
    emit(os.str());
  }

  void json_out(json j) {
    j["provenance"] = provenance_json();
    emit(j.dump(2) + "\n");
  }

  void emit(const std::string& s) {
    if (opt_.out_path.empty()) {
      std::cout << s;
      return;
    }
    std::ofstream f(opt_.out_path, std::ios::binary);
    if (!f) throw SchemaError("cannot write " + opt_.out_path);
    f << s;
  }

 private:
  Options opt_;
  std::string cmd_;
  Tolerances tol_;
  Scene scene_;
};

void check_format(const std::string& f, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed)
    if (f == a) return;
  throw SchemaError("format '" + f + "' is not available for this command");
}

// ------------------------------------------------------------------ dist
void cmd_dist(Run& run) {
  const auto& sc = run.scene();
  const auto pairs = sc.point_pairs();
  if (pairs.empty()) throw SchemaError("dist needs at least two points");
  const auto f = run.format("text");
  check_format(f, {"text", "csv", "json"});

  std::vector<std::vector<std::string>> rows;
  json arr = json::array();
  std::string text;
  if (sc.is_real()) {
    const auto lam = sc.real_lambda();
    for (const auto& [i, j] : pairs) {
      const double d = point_distance(lam, sc.real_points[i], sc.real_points[j]);
      rows.push_back({std::to_string(i), std::to_string(j), num(d)});
      arr.push_back({{"i", i}, {"j", j}, {"distance", jnum(d)}});
      text += num(d) + "\n";
    }
    if (f == "csv") return run.csv("i,j,distance", rows);
  } else {
    const auto pair = sc.pair(run.tol());
    for (const auto& [i, j] : pairs) {
      const auto r = distance_report(pair, sc.point(sc.points[i]), sc.point(sc.points[j]));
      rows.push_back({std::to_string(i), std::to_string(j), num(r.value), std::to_string(r.phi),
                      std::to_string(r.phi2)});
      arr.push_back({{"i", i}, {"j", j}, {"distance", jnum(r.value)}, {"phi", r.phi}, {"phi2", r.phi2}});
      text += num(r.value) + "\n";
    }
    if (f == "csv") return run.csv("i,j,distance,phi,phi2", rows);
  }
  if (f == "json") return run.json_out({{"distances", arr}});
  run.emit(text);
}

// ------------------------------------------------------------------ norm
void cmd_norm(Run& run) {
  const auto& sc = run.scene();
  if (sc.tangents.empty()) throw SchemaError("norm needs tangents");
  const auto f = run.format("text");
  check_format(f, {"text", "csv", "json"});
  const auto pair = sc.pair(run.tol());
  std::vector<std::vector<std::string>> rows;
  json arr = json::array();
  std::string text;
  for (std::size_t k = 0; k < sc.tangents.size(); ++k) {
    const auto& t = sc.tangents[k];
    const auto v = TangentVector::from_chart(sc.transformed(t.point), sc.transformed(t.velocity));
    const auto r = finsler_norm_report(pair, v);
    rows.push_back({std::to_string(k), num(r.value), std::to_string(r.argmax), std::to_string(r.argmin)});
    arr.push_back({{"index", k}, {"norm", jnum(r.value)}, {"argmax", r.argmax}, {"argmin", r.argmin}});
    text += num(r.value) + "\n";
  }
  if (f == "csv") return run.csv("index,norm,argmax,argmin", rows);
  if (f == "json") return run.json_out({{"norms", arr}});
  run.emit(text);
}

// ------------------------------------------------------------------ ball
std::string svg_polygon(const std::vector<std::array<double, 2>>& v, const std::string& comment) {
  double R = 0;
  for (const auto& p : v) R = std::max({R, std::abs(p[0]), std::abs(p[1])});
  if (!(R > 0)) R = 1;
  const double scale = 220.0 / R;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- " << comment << " -->\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"500\" height=\"500\" viewBox=\"-250 -250 500 500\">\n"
     << "  <line x1=\"-240\" y1=\"0\" x2=\"240\" y2=\"0\" stroke=\"#bbb\"/>\n"
     << "  <line x1=\"0\" y1=\"-240\" x2=\"0\" y2=\"240\" stroke=\"#bbb\"/>\n"
     << "  <polygon fill=\"#cde\" stroke=\"#124\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? " " : "") << num(v[i][0] * scale) << "," << num(0.0 - v[i][1] * scale);
  os << "\"/>\n</svg>\n";
  return os.str();
}

void cmd_ball(Run& run) {
  const auto& sc = run.scene();
  CVec base;
  if (sc.base) base = *sc.base;
  else if (!sc.points.empty()) base = sc.points.front();
  else throw SchemaError("ball needs a base point (base or points[0])");
  const auto pair = sc.pair(run.tol());
  const auto ball = unit_ball(pair, sc.point(base));
  const auto f = run.format("csv");
  check_format(f, {"csv", "json", "svg"});
  if (f == "svg") {
    if (ball.real_dim() != 2) throw SchemaError("svg output needs dim 1");
    return run.emit(svg_polygon(ball.vertices(), run.provenance_text()));
  }
  if (f == "json") {
    json verts = json::array(), funcs = json::array();
    for (const auto& p : ball.vertices()) verts.push_back({p[0], p[1]});
    for (Eigen::Index i = 0; i < ball.functionals().rows(); ++i) {
      json row = json::array();
      for (Eigen::Index c = 0; c < ball.functionals().cols(); ++c) row.push_back(ball.functionals()(i, c));
      funcs.push_back(row);
    }
    return run.json_out({{"real_dim", ball.real_dim()},
                         {"halfspaces", ball.halfspace_count()},
                         {"functionals", funcs},
                         {"vertices", verts}});
  }
  std::vector<std::vector<std::string>> rows;
  if (ball.real_dim() == 2) {
    for (const auto& r : ball.support_sweep(720)) rows.push_back({num(r[0]), num(r[1]), num(r[2])});
    return run.csv("dir_re,dir_im,support", rows);
  }
  std::string header = "functional";
  for (int c = 0; c < ball.real_dim(); ++c) header += ",x" + std::to_string(c);
  for (Eigen::Index i = 0; i < ball.functionals().rows(); ++i) {
    std::vector<std::string> r{std::to_string(i)};
    for (Eigen::Index c = 0; c < ball.functionals().cols(); ++c) r.push_back(num(ball.functionals()(i, c)));
    rows.push_back(r);
  }
  run.csv(header, rows);
}

// ------------------------------------------------------------------ separate
void cmd_separate(Run& run) {
  const auto& sc = run.scene();
  const auto pairs = sc.point_pairs();
  if (pairs.empty()) throw SchemaError("separate needs at least two points");
  const auto f = run.format("text");
  check_format(f, {"text", "csv", "json"});
  const auto pair = sc.pair(run.tol());
  std::vector<std::vector<std::string>> rows;
  json arr = json::array();
  std::string text;
  for (const auto& [i, j] : pairs) {
    const auto r = separates(pair, sc.point(sc.points[i]), sc.point(sc.points[j]));
    const double rad = r.witness ? r.witness->radius : std::nan("");
    const double res = r.witness ? r.witness->max_rel_residual : std::nan("");
    rows.push_back({std::to_string(i), std::to_string(j), r.separated ? "1" : "0", num(r.distance), num(rad), num(res)});
    json e = {{"i", i}, {"j", j}, {"separated", r.separated}, {"distance", jnum(r.distance)}};
    if (r.witness) e["witness"] = {{"radius", jnum(rad)}, {"max_rel_residual", jnum(res)}, {"points", r.witness->points}};
    arr.push_back(e);
    text += std::string(r.separated ? "separated " : "not-separated ") + num(r.distance) + "\n";
  }
  if (f == "csv") return run.csv("i,j,separated,distance,witness_radius,witness_residual", rows);
  if (f == "json") return run.json_out({{"pairs", arr}});
  run.emit(text);
}

// ------------------------------------------------------------------ scan
void cmd_scan(Run& run) {
  const auto& sc = run.scene();
  CVec base;
  std::vector<CVec> path = sc.path;
  if (sc.base) base = *sc.base;
  else if (!sc.points.empty()) base = sc.points.front();
  else throw SchemaError("scan needs a base point");
  if (path.empty()) path.assign(sc.points.begin() + (sc.base ? 0 : 1), sc.points.end());
  if (path.empty()) throw SchemaError("scan needs a path");
  const auto f = run.format("csv");
  check_format(f, {"csv", "json"});
  const auto pair = sc.pair(run.tol());
  std::vector<HomPoint> pts;
  for (const auto& p : path) pts.push_back(sc.point(p));
  const auto F = exhaustion_scan(pair, sc.point(base), pts);
  if (f == "json") {
    json a = json::array();
    for (double x : F) a.push_back(jnum(x));
    return run.json_out({{"F", a}});
  }
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < F.size(); ++k) rows.push_back({std::to_string(k), num(F[k])});
  run.csv("index,F", rows);
}

// ------------------------------------------------------------------ qiscan
void cmd_qiscan(Run& run) {
  const auto& sc = run.scene();
  const auto ps = sc.puncture_set(run.tol());
  const QiQuery q = sc.qi.value_or(QiQuery{});
  if (q.cusp >= ps.size()) throw SchemaError("cusp index out of range");
  std::vector<double> r, alpha, theta;
  const double l0 = std::log10(q.r_min), l1 = std::log10(q.r_max);
  const int steps = std::max(1, static_cast<int>(std::lround((l1 - l0) * q.per_decade)));
  for (int k = 0; k <= steps; ++k) r.push_back(std::pow(10.0, l0 + (l1 - l0) * k / steps));
  const double pi = std::numbers::pi;
  for (int k = 0; k < q.alphas; ++k) alpha.push_back(-pi + 2 * pi * k / q.alphas);
  for (int k = 0; k < q.thetas; ++k) theta.push_back(2 * pi * k / q.thetas);
  const auto rep = qi_ratio_scan(ps, q.cusp, r, alpha, theta);
  const auto f = run.format("csv");
  check_format(f, {"csv", "json"});
  if (f == "json") {
    json dec = json::array();
    for (std::size_t i = 0; i < rep.decades.size(); ++i) dec.push_back({{"decade", rep.decades[i]}, {"C", jnum(rep.decade_C[i])}});
    return run.json_out({{"C", jnum(rep.C)}, {"max_ratio", jnum(rep.max_ratio)}, {"min_ratio", jnum(rep.min_ratio)},
                         {"stable", rep.stable}, {"decades", dec}, {"rows", rep.rows.size()}});
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& row : rep.rows)
    rows.push_back({num(row.r), num(row.alpha), num(row.finsler), num(row.hyperbolic), num(row.ratio)});
  run.csv("r,alpha,finsler,hyperbolic,ratio", rows,
          {"C=" + num(rep.C) + " stable=" + (rep.stable ? "1" : "0")});
}

// ------------------------------------------------------------------ basmajian
void cmd_basmajian(Run& run) {
  const auto& sc = run.scene();
  if (sc.source != SourceKind::ifs) throw SchemaError("basmajian needs an IFS scene (maps)");
  const auto reps = basmajian_check(sc.ifs, sc.generator, sc.ifs_x, sc.extra_points);
  const auto f = run.format("csv");
  check_format(f, {"csv", "json"});
  if (f == "json") {
    json a = json::array();
    for (const auto& r : reps)
      a.push_back({{"depth", r.depth}, {"gap_count", r.gap_count}, {"S_k", jnum(r.S)},
                   {"continuous_part", jnum(r.continuous)}, {"T_k", jnum(r.T)},
                   {"tail_bound", jnum(r.tail_bound)}, {"target_l", jnum(r.l)}});
    return run.json_out({{"rows", a}});
  }
  std::vector<std::vector<std::string>> rows;
  for (const auto& r : reps)
    rows.push_back({std::to_string(r.depth), std::to_string(r.gap_count), num(r.S), num(r.continuous), num(r.T),
                    num(r.tail_bound), num(r.l)});
  run.csv("depth,gap_count,S_k,continuous_part,T_k,tail_bound,target_l", rows);
}

// ------------------------------------------------------------------ qmextend
void cmd_qmextend(Run& run) {
  const auto& sc = run.scene();
  if (sc.source != SourceKind::real_pieces || !sc.qm) throw SchemaError("qmextend needs real_pieces and qm");
  std::vector<double> src;
  for (const auto& a : sc.real_pieces) {
    if (!a.is_point() || std::isinf(a.lo)) throw SchemaError("qmextend: pieces must be finite points");
    src.push_back(a.lo);
  }
  const auto& q = *sc.qm;
  const QMMap F(src, q.target);
  const double K = empirical_qm_constant(F, q.samples, q.seed);
  const auto E = qm_extend(F);
  auto with_inf = [](std::vector<double> v) {
    v.push_back(std::numeric_limits<double>::infinity());
    return RealLambda::points(std::move(v));
  };
  const auto Ls = with_inf(F.src()), Lt = with_inf(F.dst());
  const double lo = F.src().front() - 1, hi = F.src().back() + 1;
  std::mt19937_64 rng(q.seed);
  std::uniform_real_distribution<double> U(lo, hi);
  const double bound = 8 * std::log(K);
  std::size_t violations = 0;
  double worst = 0;
  std::vector<std::vector<std::string>> rows;
  for (std::size_t k = 0; k < q.pairs; ++k) {
    double x, y;
    do {
      x = U(rng);
      y = U(rng);
    } while (Ls.contains(x) || Ls.contains(y) || x == y);
    const double d = point_distance(Ls, x, y), d2 = point_distance(Lt, E(x), E(y));
    worst = std::max(worst, std::abs(d2 - d));
    violations += std::abs(d2 - d) > bound;
    rows.push_back({num(x), num(y), num(d), num(E(x)), num(E(y)), num(d2)});
  }
  const double Kext = extension_qm_constant(E, lo, hi, q.samples, q.seed + 1);
  const auto f = run.format("json");
  check_format(f, {"csv", "json"});
  if (f == "csv")
    return run.csv("x,y,distance,image_x,image_y,image_distance", rows,
                   {"K_hat=" + num(K) + " bound=" + num(bound) + " max_distortion=" + num(worst) +
                    " violations=" + std::to_string(violations)});
  run.json_out({{"K_hat", jnum(K)}, {"bound", jnum(bound)}, {"max_distortion", jnum(worst)},
                {"violations", violations}, {"pairs", q.pairs}, {"extension_K", jnum(Kext)},
                {"bilipschitz", jnum(E.bilipschitz_constant())}});
}

int cmd_selftest(const Options& opt) {
  std::ostringstream os;
  bool all = true;
  for (int i = 1; i <= acceptance::kCriteria; ++i) {
    const auto r = acceptance::run_criterion(i);
    all = all && r.passed;
    const auto line = acceptance::format_line(r);
    os << line << "\n";
    std::cout << line << std::endl;
  }
  os << (all ? "all criteria passed" : "some criteria FAILED") << "\n";
  std::cout << (all ? "all criteria passed" : "some criteria FAILED") << std::endl;
  if (!opt.out_path.empty()) {
    std::ofstream f(opt.out_path);
    f << os.str();
  }
  return all ? kOk : kFail;
}

int report(const char* kind, const std::string& msg, int code, json extra = json::object()) {
  json e = {{"error", kind}, {"message", msg}, {"exit_code", code}};
  for (auto& [k, v] : extra.items()) e[k] = v;
  std::cerr << e.dump() << std::endl;
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized Hilbert metric toolkit"};
  app.set_version_flag("--version", std::string(GENHILBERT_VERSION));
  app.require_subcommand(1);
  Options opt;
  app.add_option("--scene", opt.scene_path, "Scene file (JSON)");
  app.add_option("--out", opt.out_path, "Output file (default: stdout)");
  app.add_option("--format", opt.format, "csv | json | svg (text for dist, norm, separate by default)")
      ->check(CLI::IsMember({"csv", "json", "svg", "text"}));
  app.add_option("--tol", opt.tol, "Admissibility floor for |phi(omega)|")->check(CLI::PositiveNumber);
  app.add_option("--threads", opt.threads, "Worker threads for reductions over Lambda")->check(CLI::PositiveNumber);
  app.add_flag("--no-provenance", opt.no_provenance, "Omit the timestamp from provenance lines");

  struct Sub {
    const char* name;
    const char* help;
    void (*fn)(Run&);
  };
  const Sub subs[] = {
      {"dist", "d_Lambda between point pairs", cmd_dist},
      {"norm", "Finsler norm of tangent vectors", cmd_norm},
      {"ball", "unit ball of the Finsler norm at a base point", cmd_ball},
      {"separate", "separation test with witness circle", cmd_separate},
      {"scan", "F(w) = d(w0, w) along a path", cmd_scan},
      {"qiscan", "cusp quasi-isometry ratio scan", cmd_qiscan},
      {"basmajian", "per-depth Basmajian sums for an IFS", cmd_basmajian},
      {"qmextend", "quasi-Moebius extension and distortion check", cmd_qmextend},
  };
  std::vector<CLI::App*> handles;
  for (const auto& s : subs) handles.push_back(app.add_subcommand(s.name, s.help)->fallthrough());
  auto* selftest = app.add_subcommand("selftest", "run the acceptance suite")->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report("usage", e.what(), kSchema);
  }

  if (selftest->parsed()) return cmd_selftest(opt);
  try {
    for (std::size_t i = 0; i < handles.size(); ++i) {
      if (!handles[i]->parsed()) continue;
      Run run(opt, subs[i].name);
      run.load();
      subs[i].fn(run);
    }
  } catch (const SchemaError& e) {
    return report(e.kind(), e.what(), kSchema);
  } catch (const DimensionMismatch& e) {
    return report(e.kind(), e.what(), kSchema);
  } catch (const AdmissibilityError& e) {
    return report(e.kind(), e.what(), kAdmissibility, {{"form_index", e.form_index()}});
  } catch (const UnboundedBall& e) {
    return report(e.kind(), e.what(), kNumeric, {{"direction", e.direction()}});
  } catch (const Error& e) {
    return report(e.kind(), e.what(), kNumeric);
  } catch (const nlohmann::json::exception& e) {
    return report("schema", e.what(), kSchema);
  } catch (const std::exception& e) {
    return report("numeric", e.what(), kNumeric);
  }
  return kOk;
}
