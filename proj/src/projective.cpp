#include "genhilbert/projective.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <unordered_map>

namespace genhilbert {

namespace {

// Coordinates below this modulus (after unit normalization) are treated as
// zero when choosing the coordinate whose phase is removed.
constexpr double kPivotFloor = 1e-10;

double norm2(std::span<const cplx> v) {
  double s = 0;
  for (const auto& c : v) s += std::norm(c);
  return s;
}

// det of the 2x2 matrix with columns u, v in the basis used by cross_ratio_cp1.
cplx det2(std::span<const cplx> u, std::span<const cplx> v) { return u[0] * v[1] - u[1] * v[0]; }

struct RowKey {
  std::vector<std::int64_t> q;
  bool operator==(const RowKey& o) const { return q == o.q; }
};

struct RowKeyHash {
  std::size_t operator()(const RowKey& k) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : k.q) {
      h ^= static_cast<std::uint64_t>(x);
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

RowKey quantize(std::span<const cplx> row) {
  constexpr double grid = 1e-9;
  RowKey k;
  k.q.reserve(row.size() * 2);
  for (const auto& c : row) {
    k.q.push_back(static_cast<std::int64_t>(std::llround(c.real() / grid)));
    k.q.push_back(static_cast<std::int64_t>(std::llround(c.imag() / grid)));
  }
  return k;
}

}  // namespace

namespace detail {

void canonicalize(std::span<cplx> v) {
  for (const auto& c : v) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()))
      throw DegenerateInput("non-finite homogeneous coordinate");
  }
  const double n = std::sqrt(norm2(v));
  if (!(n > 0)) throw DegenerateInput("zero vector has no projective class");
  const double inv = 1.0 / n;
  for (auto& c : v) c *= inv;
  for (auto& pivot : v) {
    const double m = std::abs(pivot);
    if (m > kPivotFloor) {
      const cplx phase = std::conj(pivot) / m;
      for (auto& c : v) c *= phase;
      pivot = cplx(pivot.real(), 0.0);
      return;
    }
  }
}

}  // namespace detail

HomPoint affine_point(std::span<const cplx> z) {
  CVec lift(z.begin(), z.end());
  lift.push_back(1.0);
  return HomPoint(std::move(lift));
}

HomPoint affine_point(cplx z) { return HomPoint{z, 1.0}; }

HomPoint point_at_infinity_cp1() { return HomPoint{1.0, 0.0}; }

HomForm puncture_form(cplx p) { return HomForm{1.0, -p}; }

HomForm puncture_form_at_infinity() { return HomForm{0.0, 1.0}; }

// ---------------------------------------------------------------------------
// LambdaSet

LambdaSet::LambdaSet(const std::vector<HomForm>& forms, std::string label) {
  if (forms.empty()) throw DegenerateInput("form family must be nonempty");
  const int dim = forms.front().dim();
  CVec rows;
  rows.reserve(forms.size() * (static_cast<std::size_t>(dim) + 1));
  for (const auto& f : forms) {
    if (f.dim() != dim) throw DimensionMismatch("forms of different dimensions in one family");
    rows.insert(rows.end(), f.coords().begin(), f.coords().end());
  }
  *this = from_rows(dim, rows, std::move(label));
}

LambdaSet LambdaSet::from_rows(int dim, std::span<const cplx> rows, std::string label,
                               double dedup_tol) {
  if (dim < 1) throw DimensionMismatch("projective dimension must be >= 1");
  const std::size_t stride = static_cast<std::size_t>(dim) + 1;
  if (rows.empty() || rows.size() % stride != 0)
    throw DimensionMismatch("row block is not a nonempty multiple of dim+1");

  LambdaSet out;
  out.dim_ = dim;
  out.label_ = std::move(label);
  out.data_.reserve(rows.size());

  std::unordered_map<RowKey, std::vector<std::size_t>, RowKeyHash> seen;
  seen.reserve(rows.size() / stride);
  CVec row(stride);
  for (std::size_t r = 0; r < rows.size() / stride; ++r) {
    std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(r * stride), stride, row.begin());
    detail::canonicalize(row);
    auto& bucket = seen[quantize(row)];
    bool dup = false;
    for (auto idx : bucket) {
      double d2 = 0;
      for (std::size_t i = 0; i < stride; ++i) d2 += std::norm(row[i] - out.data_[idx * stride + i]);
      if (std::sqrt(d2) <= dedup_tol) {
        dup = true;
        break;
      }
    }
    if (dup) continue;
    bucket.push_back(out.count_);
    out.data_.insert(out.data_.end(), row.begin(), row.end());
    ++out.count_;
  }
  return out;
}

HomForm LambdaSet::form(std::size_t i) const {
  auto c = coeffs(i);
  return HomForm(CVec(c.begin(), c.end()));
}

// ---------------------------------------------------------------------------
// ProjTransform

ProjTransform::ProjTransform(Eigen::MatrixXcd matrix) : m_(std::move(matrix)) {
  if (m_.rows() != m_.cols() || m_.rows() < 2)
    throw DimensionMismatch("projective transform must be square of size >= 2");
  const double scale = m_.norm();
  const double det = std::abs(m_.determinant());
  if (!(det > 1e-12 * std::pow(scale, static_cast<double>(m_.rows()))))
    throw SingularTransform("matrix is singular to working precision");
  inv_t_ = m_.inverse().transpose();
}

ProjTransform ProjTransform::identity(int dim) {
  return ProjTransform(Eigen::MatrixXcd::Identity(dim + 1, dim + 1));
}

// ---------------------------------------------------------------------------
// pairings and cross-ratios

cplx pairing(std::span<const cplx> phi, std::span<const cplx> omega) {
  if (phi.size() != omega.size()) throw DimensionMismatch("form and point dimensions differ");
  cplx s = 0;
  for (std::size_t i = 0; i < phi.size(); ++i) s += phi[i] * omega[i];
  return s;
}

cplx pairing(const HomForm& phi, const HomPoint& omega) {
  return pairing(phi.coords(), omega.coords());
}

cplx cross_ratio_cp1(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> c,
                     std::span<const cplx> d) {
  const cplx da = det2(d, a), cb = det2(c, b);
  const double scale = std::sqrt(norm2(a) * norm2(b) * norm2(c) * norm2(d));
  if (std::abs(da * cb) <= 1e-14 * scale)
    throw DegenerateInput("cross-ratio undefined: a = d or b = c");
  return det2(d, b) * det2(c, a) / (da * cb);
}

cplx cross_ratio_points(const HomPoint& a, const HomPoint& b, const HomPoint& c,
                        const HomPoint& d) {
  const std::size_t m = a.size();
  if (b.size() != m || c.size() != m || d.size() != m)
    throw DimensionMismatch("cross-ratio of points of different dimensions");
  if (a.projectively_equal(b)) throw DegenerateInput("cross-ratio undefined: a = b");

  // Orthonormal basis (e0, e1) of span(a, b) via Gram-Schmidt.
  CVec e0(a.coords().begin(), a.coords().end());
  CVec e1(b.coords().begin(), b.coords().end());
  cplx proj = 0;
  for (std::size_t i = 0; i < m; ++i) proj += std::conj(e0[i]) * e1[i];
  for (std::size_t i = 0; i < m; ++i) e1[i] -= proj * e0[i];
  const double n1 = std::sqrt(norm2(e1));
  for (auto& x : e1) x /= n1;

  auto coords2 = [&](std::span<const cplx> p) {
    cplx u = 0, v = 0;
    for (std::size_t i = 0; i < m; ++i) {
      u += std::conj(e0[i]) * p[i];
      v += std::conj(e1[i]) * p[i];
    }
    double r2 = 0;
    for (std::size_t i = 0; i < m; ++i) r2 += std::norm(p[i] - u * e0[i] - v * e1[i]);
    if (std::sqrt(r2) > 1e-9) throw DegenerateInput("points are not on a common projective line");
    return std::array<cplx, 2>{u, v};
  };
  const auto A = coords2(a.coords()), B = coords2(b.coords()), C = coords2(c.coords()),
             D = coords2(d.coords());
  return cross_ratio_cp1(A, B, C, D);
}

cplx cross_ratio_lifts(std::span<const cplx> phi, std::span<const cplx> phi2,
                       std::span<const cplx> omega, std::span<const cplx> omega2) {
  return pairing(phi, omega) * pairing(phi2, omega2) / (pairing(phi, omega2) * pairing(phi2, omega));
}

cplx cross_ratio(const HomForm& phi, const HomForm& phi2, const HomPoint& omega,
                 const HomPoint& omega2, const Tolerances& tol) {
  if (phi.size() != omega.size() || phi2.size() != omega.size() || omega2.size() != omega.size())
    throw DimensionMismatch("cross-ratio arguments of different dimensions");
  const cplx p11 = pairing(phi, omega), p12 = pairing(phi, omega2);
  const cplx p21 = pairing(phi2, omega), p22 = pairing(phi2, omega2);
  for (const auto& p : {p11, p12, p21, p22}) {
    if (std::abs(p) < tol.admissibility)
      throw AdmissibilityError("point lies within the admissibility floor of a hyperplane", 0);
  }
  if (omega.projectively_equal(omega2, tol.projective_equal)) return 1.0;
  return p11 * p22 / (p12 * p21);
}

HomPoint project_form_to_line(const HomForm& phi, const HomPoint& omega, const HomPoint& omega2) {
  if (phi.size() != omega.size() || omega2.size() != omega.size())
    throw DimensionMismatch("projection arguments of different dimensions");
  if (omega.projectively_equal(omega2)) throw DegenerateInput("line through equal points");
  const cplx a = pairing(phi, omega2), b = pairing(phi, omega);
  CVec p(omega.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = a * omega[i] - b * omega2[i];
  if (std::sqrt(norm2(p)) < 1e-14) throw DegenerateInput("form vanishes on the whole line");
  return HomPoint(std::move(p));
}

// ---------------------------------------------------------------------------
// group action

namespace {

CVec apply_matrix(const Eigen::MatrixXcd& m, std::span<const cplx> x) {
  if (static_cast<std::size_t>(m.cols()) != x.size())
    throw DimensionMismatch("transform and argument dimensions differ");
  Eigen::Map<const Eigen::VectorXcd> v(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::VectorXcd y = m * v;
  return CVec(y.data(), y.data() + y.size());
}

}  // namespace

HomPoint apply_transform(const ProjTransform& g, const HomPoint& x) {
  return HomPoint(apply_matrix(g.matrix(), x.coords()));
}

HomForm apply_transform(const ProjTransform& g, const HomForm& phi) {
  return HomForm(apply_matrix(g.inverse_transpose(), phi.coords()));
}

LambdaSet apply_transform(const ProjTransform& g, const LambdaSet& lambda) {
  if (g.dim() != lambda.dim()) throw DimensionMismatch("transform and family dimensions differ");
  CVec rows;
  rows.reserve(lambda.data().size());
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    auto r = apply_matrix(g.inverse_transpose(), lambda.coeffs(i));
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return LambdaSet::from_rows(lambda.dim(), rows, lambda.label());
}

}  // namespace genhilbert
