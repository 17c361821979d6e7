#include "genhilbert/real_line.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "genhilbert/errors.hpp"

namespace genhilbert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using H2 = std::array<double, 2>;

H2 hom(double x) { return std::isinf(x) ? H2{1.0, 0.0} : H2{x, 1.0}; }

double det(const H2& u, const H2& v) { return u[0] * v[1] - u[1] * v[0]; }

// Neumaier compensated sum.
struct Accum {
  double s = 0, c = 0;
  void add(double x) {
    const double t = s + x;
    c += std::abs(s) >= std::abs(x) ? (s - t) + x : (x - t) + s;
    s = t;
  }
  double value() const { return s + c; }
};

std::complex<double> mobius_c(const Eigen::Matrix2d& m, std::complex<double> z) {
  return (m(0, 0) * z + m(0, 1)) / (m(1, 0) * z + m(1, 1));
}

}  // namespace

// Point at fraction s in (0,1) along the arc, in the angle coordinate atan(x).
double arc_point(const Arc& a, double s) {
  const double t0 = std::atan(a.lo);  // atan(inf) = pi/2
  double t1 = std::atan(a.hi);
  if (a.lo >= a.hi) t1 += std::numbers::pi;
  const double t = t0 + (t1 - t0) * s;
  return std::abs(t - std::numbers::pi / 2) < 1e-15 ? kInf : rp1(std::tan(t));
}

double rp1(double x) {
  if (std::isnan(x)) throw DegenerateInput("NaN is not a point of RP^1");
  return std::isinf(x) ? kInf : x;
}

bool closed_arc_contains(const Arc& a, double x) {
  x = rp1(x);
  if (a.lo <= a.hi) return a.lo <= x && x <= a.hi;
  return x >= a.lo || x <= a.hi;
}

bool open_arc_contains(const Arc& a, double x) {
  x = rp1(x);
  if (a.lo == a.hi) return x != a.lo;
  if (a.lo < a.hi) return a.lo < x && x < a.hi;
  return x > a.lo || x < a.hi;
}

double cross_ratio_rp1(double a, double b, double c, double d) {
  const H2 A = hom(rp1(a)), B = hom(rp1(b)), C = hom(rp1(c)), D = hom(rp1(d));
  const double den = det(D, A) * det(C, B);
  if (den == 0) throw DegenerateInput("cross-ratio undefined: a = d or b = c");
  return det(D, B) * det(C, A) / den;
}

double mobius_apply(const Eigen::Matrix2d& m, double x) {
  x = rp1(x);
  double num, den;
  if (std::isinf(x)) {
    num = m(0, 0);
    den = m(1, 0);
  } else {
    num = m(0, 0) * x + m(0, 1);
    den = m(1, 0) * x + m(1, 1);
  }
  if (den == 0) return kInf;
  return rp1(num / den);
}

double Normalizer::operator()(double x) const { return mobius_apply(m, x); }

Normalizer normalizer(const Arc& I) {
  const double a = rp1(I.lo), b = rp1(I.hi);
  if (a == b) throw DegenerateInput("component with a single endpoint cannot be normalized");
  Eigen::Matrix2d m;
  if (std::isinf(a)) {
    m << 1, -b, 0, 1;
  } else if (std::isinf(b)) {
    m << 0, -1, 1, -a;
  } else {
    const double k = b > a ? 1.0 : -1.0;
    m << k, -k * b, 1, -a;
  }
  return Normalizer{m};
}

// ---------------------------------------------------------------------------

RealLambda::RealLambda(std::vector<Arc> pieces) : pieces_(std::move(pieces)) {
  if (pieces_.empty()) throw DegenerateInput("Lambda must be nonempty");
  for (auto& p : pieces_) {
    p.lo = rp1(p.lo);
    p.hi = rp1(p.hi);
  }
  std::sort(pieces_.begin(), pieces_.end(), [](const Arc& x, const Arc& y) { return x.lo < y.lo; });
  const std::size_t n = pieces_.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (pieces_[i].wraps() || !(pieces_[i].hi < pieces_[i + 1].lo))
      throw DegenerateInput("pieces of Lambda overlap or touch");
  }
  if (n > 1 && pieces_.back().wraps() && !(pieces_.back().hi < pieces_.front().lo))
    throw DegenerateInput("pieces of Lambda overlap or touch");
  if (n == 1 && pieces_[0].wraps() && pieces_[0].hi >= pieces_[0].lo)
    throw DegenerateInput("Lambda covers RP^1");
  components_.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) components_.push_back({pieces_[i].hi, pieces_[i + 1].lo});
  components_.push_back({pieces_.back().hi, pieces_.front().lo});
}

RealLambda RealLambda::points(std::vector<double> pts) {
  std::vector<Arc> a;
  a.reserve(pts.size());
  for (double x : pts) a.push_back({x, x});
  return RealLambda(std::move(a));
}

bool RealLambda::contains(double x) const {
  x = rp1(x);
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Arc& a) { return v < a.lo; });
  if (it != pieces_.begin() && closed_arc_contains(*std::prev(it), x)) return true;
  return pieces_.back().wraps() && closed_arc_contains(pieces_.back(), x);
}

std::size_t RealLambda::component_of(double x) const {
  if (contains(x)) throw AdmissibilityError("point lies in Lambda", 0);
  x = rp1(x);
  auto it = std::upper_bound(pieces_.begin(), pieces_.end(), x,
                             [](double v, const Arc& a) { return v < a.lo; });
  const auto j = static_cast<std::size_t>(it - pieces_.begin());
  return j == 0 ? pieces_.size() - 1 : j - 1;
}

RealLambda RealLambda::with_points(const std::vector<double>& pts) const {
  std::vector<Arc> p = pieces_;
  for (double x : pts) {
    x = rp1(x);
    if (!contains(x) && std::none_of(p.begin() + static_cast<std::ptrdiff_t>(pieces_.size()), p.end(),
                                     [&](const Arc& a) { return a.lo == x; }))
      p.push_back({x, x});
  }
  return RealLambda(std::move(p));
}

// ---------------------------------------------------------------------------

namespace {

// max - min over forms p of ln|det(X,P)| - ln|det(X',P)|.
double spread(const std::vector<double>& forms, double x, double x2) {
  const H2 X = hom(x), Y = hom(x2);
  double hi = -kInf, lo = kInf;
  for (double p : forms) {
    const H2 P = hom(p);
    const double a = std::abs(det(X, P)), b = std::abs(det(Y, P));
    if (a == 0 || b == 0) throw AdmissibilityError("point lies in Lambda", 0);
    const double v = std::log(a / b);
    hi = std::max(hi, v);
    lo = std::min(lo, v);
  }
  return hi - lo;
}

}  // namespace

double point_distance(const RealLambda& lam, double x, double x2) {
  x = rp1(x);
  x2 = rp1(x2);
  const auto& c = lam.components();
  const auto i = lam.component_of(x), j = lam.component_of(x2);
  if (x == x2) return 0.0;
  const std::vector<double> forms{c[i].lo, c[i].hi, c[j].lo, c[j].hi};
  return spread(forms, x, x2);
}

double point_distance_brute_force(const RealLambda& lam, double x, double x2, int interior) {
  x = rp1(x);
  x2 = rp1(x2);
  lam.component_of(x);
  lam.component_of(x2);
  if (x == x2) return 0.0;
  std::vector<double> forms;
  for (const auto& p : lam.pieces()) {
    forms.push_back(p.lo);
    if (p.is_point()) continue;
    forms.push_back(p.hi);
    for (int k = 1; k <= interior; ++k) forms.push_back(arc_point(p, double(k) / (interior + 1)));
  }
  return spread(forms, x, x2);
}

double component_distance(const Arc& I, const Arc& J) {
  // [a,b,x,y] - 1 = (b-a)(y-x) / ((y-a)(x-b)) with (a,b) = J, (x,y) = I.
  const H2 A = hom(rp1(J.lo)), B = hom(rp1(J.hi)), X = hom(rp1(I.lo)), Y = hom(rp1(I.hi));
  const double den = det(Y, A) * det(X, B);
  const double num = det(Y, X) * det(B, A);
  if (den == 0 || !(num / den > 0))
    throw DegenerateInput("components share an endpoint or overlap");
  const double cr_m1 = num / den;
  const double s = std::sqrt(1.0 + cr_m1);
  return std::log((s + 1) * (s + 1) / cr_m1);
}

double component_distance(const RealLambda& lam, std::size_t i, std::size_t j) {
  const auto& c = lam.components();
  if (i >= c.size() || j >= c.size()) throw DegenerateInput("component index out of range");
  if (i == j) throw DegenerateInput("distance of a component to itself");
  return component_distance(c[i], c[j]);
}

ProjectionGap hyperbolic_projection_gap(double a, double b, double c, double d) {
  a = rp1(a), b = rp1(b), c = rp1(c), d = rp1(d);
  if (a == b || a == c || a == d || b == c || b == d)
    throw DegenerateInput("projection gap needs c, d away from the geodesic endpoints");
  ProjectionGap g;
  g.delta = std::log(std::abs(cross_ratio_rp1(a, b, c, d)));
  const auto M = normalizer({a, b});
  const Eigen::Matrix2d Minv = M.m.inverse();
  const std::complex<double> i(0, 1);
  g.foot_c = mobius_c(Minv, i * std::abs(M(c)));
  g.foot_d = mobius_c(Minv, i * std::abs(M(d)));
  auto resid = [&](std::complex<double> f) {
    if (std::isinf(a)) return std::abs(f.real() - b);
    if (std::isinf(b)) return std::abs(f.real() - a);
    return std::abs(std::abs(f - 0.5 * (a + b)) - 0.5 * std::abs(b - a));
  };
  g.residual = std::max(resid(g.foot_c), resid(g.foot_d));
  return g;
}

double gap_measure(const Arc& I, const Arc& J) {
  const H2 A = hom(rp1(J.lo)), B = hom(rp1(J.hi)), X = hom(rp1(I.lo)), Y = hom(rp1(I.hi));
  const double den = det(Y, A) * det(X, B);
  const double num = det(Y, X) * det(B, A);
  if (den == 0 || !(num / den > 0)) throw DegenerateInput("gap shares an endpoint with I");
  return std::log1p(num / den);
}

double nu_measure(const Arc& I, const Arc& piece) {
  if (piece.is_point()) return 0.0;
  const auto M = normalizer(I);
  const double u = M(piece.lo), v = M(piece.hi);
  if (u < 0 || v < 0 || u > v) throw DegenerateInput("piece meets the component I");
  if (u == 0 || std::isinf(v)) return kInf;
  return std::log(v / u);
}

double measure(const RealLambda& lam, std::size_t I, const MeasurableSet& E) {
  const auto& c = lam.components();
  if (I >= c.size()) throw DegenerateInput("component index out of range");
  Accum acc;
  std::vector<std::size_t> seen;
  for (auto k : E.components) {
    if (k >= c.size()) throw DegenerateInput("component index out of range");
    if (k == I) throw DegenerateInput("E contains the base component");
    if (std::find(seen.begin(), seen.end(), k) != seen.end())
      throw DegenerateInput("component listed twice in E");
    seen.push_back(k);
    acc.add(gap_measure(c[I], c[k]));
  }
  for (const auto& part : E.lambda_parts) {
    const Arc p{rp1(part.lo), rp1(part.hi)};
    // p lies in a piece iff both ends do and p misses the complement of that piece
    bool ok = false;
    for (const auto& piece : lam.pieces()) {
      if (closed_arc_contains(piece, p.lo) && closed_arc_contains(piece, p.hi)) {
        ok = p.is_point() || !closed_arc_contains(p, arc_point(Arc{piece.hi, piece.lo}, 0.5));
        break;
      }
    }
    if (!ok) throw DegenerateInput("E is not a union of components and sub-arcs of Lambda");
    acc.add(nu_measure(c[I], p));
  }
  return acc.value();
}

// ---------------------------------------------------------------------------

SelfSimilarity::SelfSimilarity(Eigen::Matrix2d m) : m_(std::move(m)) {
  const double tr = m_.trace(), dt = m_.determinant();
  if (!(dt > 0)) throw DegenerateInput("self-similarity must have positive determinant");
  const double disc = tr * tr - 4 * dt;
  if (!(disc > 0)) throw DegenerateInput("map is not hyperbolic");
  const double sq = std::sqrt(disc);
  // larger |eigenvalue| first, computed without cancellation
  const double l1 = tr >= 0 ? (tr + sq) / 2 : (tr - sq) / 2;
  const double l2 = dt / l1;
  l_ = std::log(std::abs(l1 / l2));
  if (!(l_ > 1e-12)) throw DegenerateInput("map is not hyperbolic");
  auto fixed = [&](double lam) {
    // eigenvector (b, lam - a) or (lam - d, c); take the better conditioned one
    const H2 v1{m_(0, 1), lam - m_(0, 0)}, v2{lam - m_(1, 1), m_(1, 0)};
    const H2& v = std::hypot(v1[0], v1[1]) >= std::hypot(v2[0], v2[1]) ? v1 : v2;
    return v[1] == 0 ? kInf : v[0] / v[1];
  };
  attracting_ = fixed(l1);
  repelling_ = fixed(l2);
}

bool SelfSimilarity::preserves(const RealLambda& lam, double tol) const {
  auto near = [&](double y) {
    if (lam.contains(y)) return true;
    if (std::isinf(y)) return false;
    const double h = tol * std::max(1.0, std::abs(y));
    return lam.contains(y - h) || lam.contains(y + h);
  };
  for (const auto& p : lam.pieces())
    if (!near((*this)(p.lo)) || !near((*this)(p.hi))) return false;
  return true;
}

namespace {

Arc image(const Eigen::Matrix2d& m, const Arc& a) {
  const double u = mobius_apply(m, a.lo), v = mobius_apply(m, a.hi);
  return m.determinant() > 0 ? Arc{u, v} : Arc{v, u};
}

}  // namespace

bool CantorSpec::open_set_condition() const {
  if (maps.empty()) return false;
  const Arc seed_n{rp1(seed.lo), rp1(seed.hi)};
  // a point outside the seed, used to detect images that wrap around it
  const Arc outside{seed_n.hi, seed_n.lo};
  double probe;
  if (!outside.wraps() && std::isfinite(outside.hi)) probe = 0.5 * (outside.lo + outside.hi);
  else if (std::isfinite(outside.lo)) probe = outside.lo + 1.0;
  else probe = outside.hi - 1.0;
  if (!open_arc_contains(outside, probe)) probe = kInf;
  std::vector<Arc> imgs;
  for (const auto& m : maps) {
    const Arc a = image(m, seed_n);
    if (!closed_arc_contains(seed_n, a.lo) || !closed_arc_contains(seed_n, a.hi)) return false;
    if (closed_arc_contains(a, probe)) return false;
    imgs.push_back(a);
  }
  try {
    RealLambda check(imgs);
  } catch (const DegenerateInput&) {
    return false;
  }
  return true;
}

std::vector<Arc> CantorSpec::approximant_pieces(int k) const {
  if (k < 0) throw DegenerateInput("negative depth");
  std::vector<Arc> cur{{rp1(seed.lo), rp1(seed.hi)}};
  for (int j = 0; j < k; ++j) {
    std::vector<Arc> next;
    next.reserve(cur.size() * maps.size());
    for (const auto& m : maps)
      for (const auto& a : cur) next.push_back(image(m, a));
    cur.swap(next);
  }
  return cur;
}

// ---------------------------------------------------------------------------

BasmajianReport basmajian_identity(const RealLambda& lam, const SelfSimilarity& f, double x) {
  x = rp1(x);
  if (!lam.contains(x)) throw DegenerateInput("x is not in Lambda: D is not a fundamental domain");
  const double p = f.attracting(), q = f.repelling();
  if (x == p || x == q) throw DegenerateInput("x is a fixed point of f");
  const Arc If = open_arc_contains(Arc{p, q}, x) ? Arc{q, p} : Arc{p, q};
  const auto M = normalizer(If);

  BasmajianReport r;
  r.l = f.translation_length();
  double d0 = M(x), d1 = M(f(x));
  if (d0 > d1) std::swap(d0, d1);
  if (!(d0 > 0) || std::isinf(d1)) throw NumericFailure("fundamental domain reaches a fixed point");

  std::vector<std::pair<double, double>> parts;
  parts.reserve(lam.pieces().size() + 2);
  parts.emplace_back(d0, d0);
  parts.emplace_back(d1, d1);
  for (const auto& piece : lam.pieces()) {
    const double u = M(piece.lo), v = M(piece.hi);
    if (u < 0 || v < 0 || u > v)
      throw DegenerateInput("f does not preserve a component: Lambda meets the arc between its fixed points");
    const double a = std::max(u, d0), b = std::min(v, d1);
    if (a <= b) parts.emplace_back(a, b);
  }
  std::sort(parts.begin(), parts.end());
  Accum S, C;
  double reach = parts.front().first;  // right end of Lambda covered so far
  double start = reach;                // left end of the current run
  for (const auto& [a, b] : parts) {
    if (a > reach) {
      C.add(std::log(reach / start));
      S.add(std::log(a / reach));
      ++r.gap_count;
      start = a;
    }
    reach = std::max(reach, b);
  }
  C.add(std::log(reach / start));
  r.S = S.value();
  r.continuous = C.value();
  r.T = r.S + r.continuous;
  r.tail_bound = r.continuous;
  return r;
}

std::vector<BasmajianReport> basmajian_check(const CantorSpec& spec, std::size_t generator,
                                             std::optional<double> x,
                                             const std::vector<double>& extra_points) {
  if (generator >= spec.maps.size()) throw DegenerateInput("generator index out of range");
  if (spec.depth < 1) throw DegenerateInput("depth must be >= 1");
  const SelfSimilarity f(spec.maps[generator]);
  if (!x) {
    if (spec.maps.size() < 2) throw DegenerateInput("a base point x is needed with a single map");
    x = SelfSimilarity(spec.maps[(generator + 1) % spec.maps.size()]).attracting();
  }
  std::vector<double> extra = extra_points;
  extra.push_back(f.attracting());
  extra.push_back(f.repelling());

  std::vector<BasmajianReport> out;
  std::vector<Arc> cur{{rp1(spec.seed.lo), rp1(spec.seed.hi)}};
  for (int k = 1; k <= spec.depth; ++k) {
    std::vector<Arc> next;
    next.reserve(cur.size() * spec.maps.size());
    for (const auto& m : spec.maps)
      for (const auto& a : cur) next.push_back(image(m, a));
    cur.swap(next);
    const auto lam = RealLambda(cur).with_points(extra);
    auto rep = basmajian_identity(lam, f, *x);
    rep.depth = k;
    out.push_back(rep);
  }
  return out;
}

// ---------------------------------------------------------------------------

QMMap::QMMap(std::vector<double> src, std::vector<double> dst) : src_(std::move(src)), dst_(std::move(dst)) {
  if (src_.size() != dst_.size() || src_.size() < 2)
    throw DegenerateInput("correspondence needs matching lists of at least 2 points");
  bool has0 = false, has1 = false;
  for (std::size_t i = 0; i < src_.size(); ++i) {
    if (!std::isfinite(src_[i]) || !std::isfinite(dst_[i]))
      throw DegenerateInput("infinity is fixed implicitly; list finite points only");
    if (i > 0 && !(src_[i] > src_[i - 1] && dst_[i] > dst_[i - 1]))
      throw DegenerateInput("correspondence is not order preserving");
    if (src_[i] == 0) has0 = dst_[i] == 0;
    if (src_[i] == 1) has1 = dst_[i] == 1;
  }
  if (!has0 || !has1) throw DegenerateInput("correspondence must fix 0 and 1 (normalize first)");
}

QMMap QMMap::affine_normalized(std::vector<double> src, std::vector<double> dst, std::size_t i0,
                               std::size_t i1) {
  if (i0 >= src.size() || i1 >= src.size() || src.size() != dst.size())
    throw DegenerateInput("normalization indices out of range");
  const double s0 = src[i0], s1 = src[i1], t0 = dst[i0], t1 = dst[i1];
  if (!(s1 > s0 && t1 > t0)) throw DegenerateInput("correspondence is not order preserving");
  for (auto& v : src) v = (v - s0) / (s1 - s0);
  for (auto& v : dst) v = (v - t0) / (t1 - t0);
  src[i0] = 0, src[i1] = 1, dst[i0] = 0, dst[i1] = 1;
  return QMMap(std::move(src), std::move(dst));
}

double QMMap::operator()(double x) const {
  if (std::isinf(x)) return kInf;
  auto it = std::lower_bound(src_.begin(), src_.end(), x);
  if (it == src_.end() || *it != x) throw DegenerateInput("point is not in the source set");
  return dst_[static_cast<std::size_t>(it - src_.begin())];
}

namespace {

double distortion(double a, double b, double c, double d, double fa, double fb, double fc, double fd) {
  const double r = std::abs(cross_ratio_rp1(fa, fb, fc, fd) / cross_ratio_rp1(a, b, c, d));
  return std::max(r, 1.0 / r);
}

}  // namespace

double empirical_qm_constant(const QMMap& F, std::size_t samples, unsigned seed) {
  const auto& s = F.src();
  const auto& t = F.dst();
  const std::size_t n = s.size() + 1;  // index n-1 is infinity
  auto S = [&](std::size_t i) { return i + 1 == n ? kInf : s[i]; };
  auto T = [&](std::size_t i) { return i + 1 == n ? kInf : t[i]; };
  double K = 1.0;
  if (n >= 4) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t k = 0; k < samples; ++k) {
      std::size_t q[4];
      for (int j = 0; j < 4; ++j) {
        bool fresh;
        do {
          q[j] = pick(rng);
          fresh = std::find(q, q + j, q[j]) == q + j;
        } while (!fresh);
      }
      K = std::max(K, distortion(S(q[0]), S(q[1]), S(q[2]), S(q[3]), T(q[0]), T(q[1]), T(q[2]), T(q[3])));
    }
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0 && s[i] != 1) K = std::max(K, distortion(kInf, 0, 1, s[i], kInf, 0, 1, t[i]));
    if (i + 1 < s.size() && s[i] != 0 && s[i + 1] != 0)
      K = std::max(K, distortion(kInf, s[i], 0, s[i + 1], kInf, t[i], 0, t[i + 1]));
  }
  return K;
}

QMExtension::QMExtension(QMMap F) : F_(std::move(F)) {}

double QMExtension::operator()(double x) const {
  if (std::isinf(x)) return kInf;
  const auto& s = F_.src();
  const auto& t = F_.dst();
  if (x <= s.front()) return x - s.front() + t.front();
  if (x >= s.back()) return x - s.back() + t.back();
  const auto j = static_cast<std::size_t>(std::upper_bound(s.begin(), s.end(), x) - s.begin());
  const double w = (x - s[j - 1]) / (s[j] - s[j - 1]);
  return t[j - 1] + w * (t[j] - t[j - 1]);
}

double QMExtension::bilipschitz_constant() const {
  const auto& s = F_.src();
  const auto& t = F_.dst();
  double hi = 1.0, lo = 1.0;
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    const double sl = (t[i + 1] - t[i]) / (s[i + 1] - s[i]);
    hi = std::max(hi, sl);
    lo = std::min(lo, sl);
  }
  return std::max(hi, 1.0 / lo);
}

QMExtension qm_extend(const QMMap& F) { return QMExtension(F); }

double extension_qm_constant(const QMExtension& E, double lo, double hi, std::size_t samples,
                             unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> U(lo, hi);
  std::uniform_int_distribution<int> coin(0, 7);
  double K = 1.0;
  for (std::size_t k = 0; k < samples; ++k) {
    double e[4];
    for (auto& v : e) v = U(rng);
    if (coin(rng) == 0) e[coin(rng) % 4] = kInf;
    bool distinct = true;
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) distinct = distinct && e[i] != e[j];
    if (!distinct) continue;
    K = std::max(K, distortion(e[0], e[1], e[2], e[3], E(e[0]), E(e[1]), E(e[2]), E(e[3])));
  }
  return K;
}

}  // namespace genhilbert
