#include "genhilbert/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>

namespace genhilbert {

namespace {

// |phi . x|^2 with plain real arithmetic (std::complex multiplication goes
// through the slow NaN-aware path without -ffast-math).
inline double pair_abs2(const cplx* phi, const cplx* x, std::size_t m) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = phi[i].real(), b = phi[i].imag();
    const double c = x[i].real(), d = x[i].imag();
    re += a * c - b * d;
    im += a * d + b * c;
  }
  return re * re + im * im;
}

inline cplx pair_c(const cplx* phi, const cplx* x, std::size_t m) {
  double re = 0, im = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double a = phi[i].real(), b = phi[i].imag();
    const double c = x[i].real(), d = x[i].imag();
    re += a * c - b * d;
    im += a * d + b * c;
  }
  return {re, im};
}

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Runs body(begin, end, slot) over [0, count) in `threads` contiguous chunks
// and returns the per-chunk results in chunk order.
template <class R, class F>
std::vector<R> chunked(std::size_t count, std::size_t threads, F body) {
  threads = std::max<std::size_t>(1, std::min(threads, count / 4096 + 1));
  std::vector<R> out(threads);
  if (threads == 1) {
    out[0] = body(0, count);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const std::size_t step = (count + threads - 1) / threads;
  std::vector<std::exception_ptr> errs(threads);
  for (std::size_t t = 0; t < threads; ++t) {
    const std::size_t b = std::min(count, t * step), e = std::min(count, b + step);
    pool.emplace_back([&, t, b, e] {
      try {
        out[t] = body(b, e);
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

struct Extremes {
  double r1 = -1, r2 = -1;  // max a/b, max b/a
  std::size_t i1 = kNone, i2 = kNone;
  std::size_t bad = kNone;  // lowest inadmissible index
};

Extremes scan_pair(const AdmissiblePair& pair, const HomPoint& w, const HomPoint& w2) {
  const auto& lam = pair.lambda();
  if (w.size() != lam.stride() || w2.size() != lam.stride())
    throw DimensionMismatch("point and form family dimensions differ");
  const std::size_t m = lam.stride();
  const double floor2 = pair.tol().admissibility * pair.tol().admissibility;
  const cplx* data = lam.data().data();
  const cplx* x = w.coords().data();
  const cplx* y = w2.coords().data();
  auto parts = chunked<Extremes>(lam.size(), pair.tol().threads, [&](std::size_t b, std::size_t e) {
    Extremes ex;
    for (std::size_t k = b; k < e; ++k) {
      const cplx* phi = data + k * m;
      const double a = pair_abs2(phi, x, m), c = pair_abs2(phi, y, m);
      if (a < floor2 || c < floor2) {
        ex.bad = k;
        return ex;
      }
      const double q = a / c, q2 = c / a;
      if (q > ex.r1) ex.r1 = q, ex.i1 = k;
      if (q2 > ex.r2) ex.r2 = q2, ex.i2 = k;
    }
    return ex;
  });
  Extremes all;
  for (const auto& p : parts) {
    if (p.bad != kNone) {
      all.bad = p.bad;
      return all;
    }
    if (p.r1 > all.r1) all.r1 = p.r1, all.i1 = p.i1;
    if (p.r2 > all.r2) all.r2 = p.r2, all.i2 = p.i2;
  }
  return all;
}

[[noreturn]] void throw_inadmissible(std::size_t k) {
  throw AdmissibilityError("point within the admissibility floor of the kernel of form " +
                               std::to_string(k),
                           k);
}

CVec canonical_lift_plus(const HomPoint& w, std::span<const cplx> dir, cplx t) {
  CVec p(w.coords().begin(), w.coords().end());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += t * dir[i];
  return p;
}

// Values x_k(v) = Re(phi_k(v) / phi_k(w)) for every form.
std::vector<double> tangent_values(const AdmissiblePair& pair, const TangentVector& v) {
  const auto& lam = pair.lambda();
  const std::size_t m = lam.stride();
  if (v.base().size() != m) throw DimensionMismatch("tangent vector and family dimensions differ");
  const double floor2 = pair.tol().admissibility * pair.tol().admissibility;
  std::vector<double> x(lam.size());
  const cplx* w = v.base().coords().data();
  const cplx* d = v.dir().data();
  for (std::size_t k = 0; k < lam.size(); ++k) {
    const cplx* phi = lam.data().data() + k * m;
    const cplx pw = pair_c(phi, w, m);
    const double a = std::norm(pw);
    if (a < floor2) throw_inadmissible(k);
    const cplx pv = pair_c(phi, d, m);
    // Re(pv / pw) = Re(pv * conj(pw)) / |pw|^2
    x[k] = (pv.real() * pw.real() + pv.imag() * pw.imag()) / a;
  }
  return x;
}

}  // namespace

// ---------------------------------------------------------------------------

AdmissiblePair::AdmissiblePair(LambdaSet lambda, Tolerances tol)
    : lambda_(std::make_shared<const LambdaSet>(std::move(lambda))), tol_(tol) {}

AdmissiblePair::AdmissiblePair(std::shared_ptr<const LambdaSet> lambda, Tolerances tol)
    : lambda_(std::move(lambda)), tol_(tol) {
  if (!lambda_) throw DegenerateInput("null form family");
}

bool AdmissiblePair::contains(const HomPoint& omega) const {
  try {
    require(omega);
    return true;
  } catch (const AdmissibilityError&) {
    return false;
  }
}

void AdmissiblePair::require(const HomPoint& omega) const {
  const std::size_t m = lambda_->stride();
  if (omega.size() != m) throw DimensionMismatch("point and form family dimensions differ");
  const double floor2 = tol_.admissibility * tol_.admissibility;
  for (std::size_t k = 0; k < lambda_->size(); ++k) {
    if (pair_abs2(lambda_->data().data() + k * m, omega.coords().data(), m) < floor2)
      throw_inadmissible(k);
  }
}

// ---------------------------------------------------------------------------

TangentVector::TangentVector(HomPoint base, CVec dir) : base_(std::move(base)), dir_(std::move(dir)) {
  if (dir_.size() != base_.size()) throw DimensionMismatch("tangent direction has wrong size");
  cplx ip = 0;
  for (std::size_t i = 0; i < dir_.size(); ++i) ip += std::conj(base_[i]) * dir_[i];
  for (std::size_t i = 0; i < dir_.size(); ++i) dir_[i] -= ip * base_[i];
}

TangentVector TangentVector::from_chart(std::span<const cplx> lift, std::span<const cplx> velocity) {
  if (lift.size() != velocity.size()) throw DimensionMismatch("lift and velocity sizes differ");
  HomPoint base(CVec(lift.begin(), lift.end()));
  std::size_t k = 0;
  for (std::size_t i = 1; i < lift.size(); ++i)
    if (std::abs(lift[i]) > std::abs(lift[k])) k = i;
  const cplx s = base[k] / lift[k];
  CVec dir(velocity.begin(), velocity.end());
  for (auto& c : dir) c *= s;
  return TangentVector(std::move(base), std::move(dir));
}

TangentVector TangentVector::affine(cplx z, cplx v) {
  const std::array<cplx, 2> lift{z, 1.0}, vel{v, 0.0};
  return from_chart(lift, vel);
}

TangentVector TangentVector::scaled(double s) const {
  CVec d = dir_;
  for (auto& c : d) c *= s;
  return TangentVector(base_, std::move(d));
}

TangentVector TangentVector::operator+(const TangentVector& o) const {
  if (!base_.projectively_equal(o.base_, 1e-12))
    throw DegenerateInput("tangent vectors at different base points");
  CVec d = dir_;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] += o.dir_[i];
  return TangentVector(base_, std::move(d));
}

bool TangentVector::is_zero() const noexcept {
  for (const auto& c : dir_)
    if (c != cplx(0, 0)) return false;
  return true;
}

// ---------------------------------------------------------------------------

double funk(const AdmissiblePair& pair, const HomPoint& omega, const HomPoint& omega2) {
  const auto ex = scan_pair(pair, omega, omega2);
  if (ex.bad != kNone) throw_inadmissible(ex.bad);
  if (omega.projectively_equal(omega2, pair.tol().projective_equal)) return 0.0;
  return 0.5 * std::log(ex.r1);
}

double funk(const AdmissiblePair& pair, std::span<const cplx> lift, std::span<const cplx> lift2) {
  const auto& lam = pair.lambda();
  if (lift.size() != lam.stride() || lift2.size() != lam.stride())
    throw DimensionMismatch("lift length does not match Lambda");
  pair.require(HomPoint(CVec(lift.begin(), lift.end())));
  pair.require(HomPoint(CVec(lift2.begin(), lift2.end())));
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < lam.size(); ++k)
    best = std::max(best, std::log(std::abs(pairing(lam.coeffs(k), lift)) /
                                   std::abs(pairing(lam.coeffs(k), lift2))));
  return best;
}

DistanceReport distance_report(const AdmissiblePair& pair, const HomPoint& omega,
                               const HomPoint& omega2) {
  const auto ex = scan_pair(pair, omega, omega2);
  if (ex.bad != kNone) throw_inadmissible(ex.bad);
  DistanceReport r;
  r.phi = ex.i1;
  r.phi2 = ex.i2;
  if (omega.projectively_equal(omega2, pair.tol().projective_equal)) return r;
  r.value = std::max(0.0, 0.5 * std::log(ex.r1 * ex.r2));
  return r;
}

double distance(const AdmissiblePair& pair, const HomPoint& omega, const HomPoint& omega2) {
  return distance_report(pair, omega, omega2).value;
}

double distance_brute_force(const AdmissiblePair& pair, const HomPoint& omega,
                            const HomPoint& omega2) {
  const auto& lam = pair.lambda();
  const std::size_t m = lam.stride(), N = lam.size();
  std::vector<cplx> p1(N), p2(N);
  for (std::size_t k = 0; k < N; ++k) {
    p1[k] = pairing(lam.coeffs(k), omega.coords());
    p2[k] = pairing(lam.coeffs(k), omega2.coords());
    if (std::abs(p1[k]) < pair.tol().admissibility || std::abs(p2[k]) < pair.tol().admissibility)
      throw_inadmissible(k);
  }
  (void)m;
  if (omega.projectively_equal(omega2, pair.tol().projective_equal)) return 0.0;
  double best = 0;
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j)
      best = std::max(best, std::abs(p1[i] * p2[j] / (p2[i] * p1[j])));
  return std::log(best);
}

SeparationResult separates(const AdmissiblePair& pair, const HomPoint& omega,
                           const HomPoint& omega2) {
  if (omega.projectively_equal(omega2, pair.tol().projective_equal))
    throw DegenerateInput("separation asked for a point and itself");
  SeparationResult res;
  res.distance = distance(pair, omega, omega2);
  res.separated = res.distance > pair.tol().separation;
  if (res.separated) return res;

  const auto& lam = pair.lambda();
  WitnessCircle wc;
  std::vector<cplx> zeta(lam.size());
  double sum = 0;
  for (std::size_t k = 0; k < lam.size(); ++k) {
    zeta[k] = -pairing(lam.coeffs(k), omega.coords()) / pairing(lam.coeffs(k), omega2.coords());
    sum += std::abs(zeta[k]);
  }
  wc.points = zeta.size();
  wc.radius = sum / static_cast<double>(zeta.size());
  for (const auto& z : zeta)
    wc.max_rel_residual = std::max(wc.max_rel_residual, std::abs(std::abs(z) / wc.radius - 1.0));
  if (zeta.size() >= 3) {
    Eigen::MatrixXd A(zeta.size(), 3);
    Eigen::VectorXd rhs(zeta.size());
    for (std::size_t k = 0; k < zeta.size(); ++k) {
      A(k, 0) = zeta[k].real();
      A(k, 1) = zeta[k].imag();
      A(k, 2) = 1.0;
      rhs(k) = -std::norm(zeta[k]);
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-10);
    if (qr.rank() == 3) {
      const Eigen::Vector3d s = qr.solve(rhs);
      wc.fitted_center = cplx(-s(0) / 2, -s(1) / 2);
    }
  }
  res.witness = wc;
  return res;
}

// ---------------------------------------------------------------------------

NormReport finsler_norm_report(const AdmissiblePair& pair, const TangentVector& v) {
  const auto x = tangent_values(pair, v);
  NormReport r;
  if (v.is_zero()) return r;
  double hi = -std::numeric_limits<double>::infinity(), lo = -hi;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] > hi) hi = x[k], r.argmax = k;
    if (x[k] < lo) lo = x[k], r.argmin = k;
  }
  r.value = hi - lo;
  return r;
}

double finsler_norm(const AdmissiblePair& pair, const TangentVector& v) {
  return finsler_norm_report(pair, v).value;
}

FiniteDifferenceReport finite_difference_check(const AdmissiblePair& pair, const TangentVector& v,
                                               const std::vector<double>& t_list) {
  FiniteDifferenceReport r;
  r.norm = finsler_norm(pair, v);
  for (double t : t_list) {
    if (!(t > 0)) throw DegenerateInput("finite-difference steps must be positive");
    HomPoint p(canonical_lift_plus(v.base(), v.dir(), t));
    const double ratio = distance(pair, v.base(), p) / t;
    const double err = std::abs(ratio - r.norm);
    r.t.push_back(t);
    r.ratios.push_back(ratio);
    r.errors.push_back(err);
    r.K = std::max(r.K, err / t);
  }
  // Order from the finest steps only: coarser ones may sit before the switch
  // to the asymptotic maximizing pair.
  std::vector<std::size_t> idx(r.t.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return r.t[a] < r.t[b]; });
  if (idx.size() > 4) idx.resize(4);
  std::vector<double> lx, ly;
  for (auto i : idx) {
    if (r.errors[i] > 1e-13 * std::max(1.0, r.norm)) {
      lx.push_back(std::log(r.t[i]));
      ly.push_back(std::log(r.errors[i]));
    }
  }
  if (lx.size() < 2) {
    // Already exact at every step: no observable truncation error.
    r.order = std::numeric_limits<double>::infinity();
    return r;
  }
  const double n = static_cast<double>(lx.size());
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) mx += lx[i], my += ly[i];
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  r.order = sxy / sxx;
  return r;
}

// ---------------------------------------------------------------------------
// unit ball

std::size_t UnitBallPolytope::halfspace_count() const noexcept {
  const auto m = static_cast<std::size_t>(functionals_.rows());
  return m * (m - 1);
}

std::pair<std::size_t, std::size_t> UnitBallPolytope::halfspace_pair(std::size_t h) const {
  const auto m = static_cast<std::size_t>(functionals_.rows());
  const std::size_t i = h / (m - 1);
  std::size_t j = h % (m - 1);
  if (j >= i) ++j;
  return {i, j};
}

Eigen::VectorXd UnitBallPolytope::halfspace(std::size_t h) const {
  const auto [i, j] = halfspace_pair(h);
  return (functionals_.row(static_cast<Eigen::Index>(j)) -
          functionals_.row(static_cast<Eigen::Index>(i)))
      .transpose();
}

Eigen::VectorXd UnitBallPolytope::to_real(const TangentVector& v) const {
  if (!v.base().projectively_equal(base_, 1e-12))
    throw DegenerateInput("tangent vector based elsewhere");
  Eigen::Map<const Eigen::VectorXcd> d(v.dir().data(), static_cast<Eigen::Index>(v.dir().size()));
  const Eigen::VectorXcd c = basis_.adjoint() * d;
  Eigen::VectorXd s(2 * c.size());
  for (Eigen::Index m = 0; m < c.size(); ++m) {
    s(2 * m) = c(m).real();
    s(2 * m + 1) = c(m).imag();
  }
  return s;
}

TangentVector UnitBallPolytope::from_real(const Eigen::VectorXd& s) const {
  if (s.size() != 2 * basis_.cols()) throw DimensionMismatch("real tangent vector has wrong size");
  Eigen::VectorXcd c(basis_.cols());
  for (Eigen::Index m = 0; m < c.size(); ++m) c(m) = cplx(s(2 * m), s(2 * m + 1));
  const Eigen::VectorXcd d = basis_ * c;
  return TangentVector(base_, CVec(d.data(), d.data() + d.size()));
}

double UnitBallPolytope::support(const Eigen::VectorXd& s) const {
  const Eigen::VectorXd x = functionals_ * s;
  return x.maxCoeff() - x.minCoeff();
}

bool UnitBallPolytope::contains(const Eigen::VectorXd& s) const { return support(s) <= 1.0; }

bool UnitBallPolytope::in_all_halfspaces(const Eigen::VectorXd& s) const {
  const Eigen::VectorXd x = functionals_ * s;
  for (Eigen::Index i = 0; i < x.size(); ++i)
    for (Eigen::Index j = 0; j < x.size(); ++j)
      if (i != j && x(j) - x(i) > 1.0) return false;
  return true;
}

std::vector<std::array<double, 3>> UnitBallPolytope::support_sweep(int count) const {
  if (real_dim() != 2) throw DimensionMismatch("support sweep is only defined for n = 1");
  std::vector<std::array<double, 3>> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double th = 2 * std::numbers::pi * k / count;
    Eigen::Vector2d s(std::cos(th), std::sin(th));
    out.push_back({s(0), s(1), support(s)});
  }
  return out;
}

namespace {

using P2 = std::array<double, 2>;

double cross(const P2& o, const P2& a, const P2& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Andrew's monotone chain, counter-clockwise, collinear points dropped.
std::vector<P2> convex_hull(std::vector<P2> p) {
  std::sort(p.begin(), p.end());
  p.erase(std::unique(p.begin(), p.end()), p.end());
  if (p.size() < 3) return p;
  std::vector<P2> h(2 * p.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 0) --k;
    h[k++] = p[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace

UnitBallPolytope unit_ball(const AdmissiblePair& pair, const HomPoint& base) {
  pair.require(base);
  const auto& lam = pair.lambda();
  const auto n1 = static_cast<Eigen::Index>(lam.stride());
  const Eigen::Index n = n1 - 1;

  UnitBallPolytope ball(base);
  Eigen::Map<const Eigen::VectorXcd> w(base.coords().data(), n1);
  const Eigen::MatrixXcd wm = w;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(wm);
  const Eigen::MatrixXcd Q = qr.householderQ() * Eigen::MatrixXcd::Identity(n1, n1);
  ball.basis_ = Q.rightCols(n);

  const auto N = static_cast<Eigen::Index>(lam.size());
  ball.functionals_.resize(N, 2 * n);
  for (Eigen::Index k = 0; k < N; ++k) {
    Eigen::Map<const Eigen::RowVectorXcd> phi(lam.coeffs(static_cast<std::size_t>(k)).data(), n1);
    const cplx pw = phi * w;
    const Eigen::RowVectorXcd c = (phi / pw) * ball.basis_;
    for (Eigen::Index m = 0; m < n; ++m) {
      ball.functionals_(k, 2 * m) = c(m).real();
      ball.functionals_(k, 2 * m + 1) = -c(m).imag();
    }
  }

  // The ball is bounded iff the differences of the functionals span the dual.
  auto unbounded = [&](const Eigen::VectorXd& s) {
    const TangentVector v = ball.from_real(s.normalized());
    std::vector<double> flat;
    for (const auto& c : v.dir()) {
      flat.push_back(c.real());
      flat.push_back(c.imag());
    }
    return UnboundedBall("unit ball is unbounded: a nonzero tangent vector has norm 0",
                         std::move(flat));
  };
  if (N < 2) {
    Eigen::VectorXd s = Eigen::VectorXd::Zero(2 * n);
    s(0) = 1;
    throw unbounded(s);
  }
  const Eigen::RowVectorXd mean = ball.functionals_.colwise().mean();
  const Eigen::MatrixXd centered = ball.functionals_.rowwise() - mean;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(centered.transpose() * centered);
  const auto& ev = es.eigenvalues();  // ascending
  if (!(ev(0) > 1e-16 * ev(ev.size() - 1)) || !(ev(ev.size() - 1) > 0))
    throw unbounded(es.eigenvectors().col(0));

  if (n == 1) {
    std::vector<P2> a;
    a.reserve(static_cast<std::size_t>(N));
    for (Eigen::Index k = 0; k < N; ++k) a.push_back({ball.functionals_(k, 0), ball.functionals_(k, 1)});
    const auto h = convex_hull(std::move(a));
    std::vector<P2> diff;
    diff.reserve(h.size() * h.size());
    for (const auto& p : h)
      for (const auto& q : h)
        if (&p != &q) diff.push_back({p[0] - q[0], p[1] - q[1]});
    const auto poly = convex_hull(std::move(diff));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const auto& p = poly[i];
      const auto& q = poly[(i + 1) % poly.size()];
      const double det = p[0] * q[1] - p[1] * q[0];
      ball.vertices_.push_back({(q[1] - p[1]) / det, (p[0] - q[0]) / det});
    }
  }
  return ball;
}

// ---------------------------------------------------------------------------

StrictConvexityReport strict_convexity_check(const AdmissiblePair& pair, const TangentVector& u,
                                             const TangentVector& v) {
  if (!u.base().projectively_equal(v.base(), 1e-12))
    throw DegenerateInput("tangent vectors at different base points");
  const auto xu = tangent_values(pair, u), xv = tangent_values(pair, v);
  const auto mm = [](const std::vector<double>& x) {
    return std::pair{*std::min_element(x.begin(), x.end()), *std::max_element(x.begin(), x.end())};
  };
  const auto [lu, hu] = mm(xu);
  const auto [lv, hv] = mm(xv);
  StrictConvexityReport r;
  r.norm_u = hu - lu;
  r.norm_v = hv - lv;
  r.norm_mid = finsler_norm(pair, (u + v).scaled(0.5));

  const double tu = pair.tol().argmax * std::max(1.0, r.norm_u);
  const double tv = pair.tol().argmax * std::max(1.0, r.norm_v);
  // Any maximizing pair (i, j) of u has x_i near the min and x_j near the max.
  std::vector<std::size_t> Iu, Ju, Iv, Jv;
  for (std::size_t k = 0; k < xu.size(); ++k) {
    if (xu[k] <= lu + tu) Iu.push_back(k);
    if (xu[k] >= hu - tu) Ju.push_back(k);
    if (xv[k] <= lv + tv) Iv.push_back(k);
    if (xv[k] >= hv - tv) Jv.push_back(k);
  }
  for (auto i : Iu)
    for (auto j : Ju) {
      if (i == j || xu[j] - xu[i] < r.norm_u - tu) continue;
      if (xv[j] - xv[i] >= r.norm_v - tv) {
        r.disjoint = false;
        return r;
      }
    }
  r.disjoint = true;
  return r;
}

std::vector<double> exhaustion_scan(const AdmissiblePair& pair, const HomPoint& base,
                                    const std::vector<HomPoint>& path) {
  std::vector<double> out;
  out.reserve(path.size());
  for (const auto& p : path) out.push_back(distance(pair, base, p));
  return out;
}

SubharmonicProbe subharmonic_probe(const AdmissiblePair& pair, const HomPoint& base,
                                   std::span<const cplx> center, std::span<const cplx> dir,
                                   double radius, int nodes) {
  if (center.size() != dir.size()) throw DimensionMismatch("center and direction sizes differ");
  SubharmonicProbe r;
  r.center_value = distance(pair, base, HomPoint(CVec(center.begin(), center.end())));
  double sum = 0;
  for (int j = 0; j < nodes; ++j) {
    const cplx e = std::polar(radius, 2 * std::numbers::pi * j / nodes);
    CVec p(center.begin(), center.end());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += e * dir[i];
    sum += distance(pair, base, HomPoint(std::move(p)));
  }
  r.circle_mean = sum / nodes;
  r.ok = r.center_value <= r.circle_mean + 1e-8;
  return r;
}

}  // namespace genhilbert
