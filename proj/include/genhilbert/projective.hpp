#pragma once

// Homogeneous coordinates on P(C^{n+1}) and its dual, cross-ratios of forms
// against points, and the action of PGL(n+1, C).

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "genhilbert/config.hpp"
#include "genhilbert/errors.hpp"

namespace genhilbert {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

namespace detail {

// Rescales `v` in place to the canonical representative: unit Euclidean norm,
// first coordinate of modulus above `zero_floor` real and positive.
// Throws DegenerateInput on a zero or non-finite vector.
void canonicalize(std::span<cplx> v);

struct PointTag {};
struct FormTag {};

}  // namespace detail

// An element of P(C^{n+1}) (PointTag) or of the dual space (FormTag), stored
// as its canonical representative. Construction from any nonzero lift.
template <class Tag>
class Projective {
 public:
  explicit Projective(CVec lift) : v_(std::move(lift)) {
    if (v_.size() < 2) throw DimensionMismatch("need at least 2 homogeneous coordinates");
    detail::canonicalize(v_);
  }
  Projective(std::initializer_list<cplx> lift) : Projective(CVec(lift)) {}

  // dim n of the projective space (n+1 homogeneous coordinates).
  int dim() const noexcept { return static_cast<int>(v_.size()) - 1; }
  std::size_t size() const noexcept { return v_.size(); }
  std::span<const cplx> coords() const noexcept { return v_; }
  const cplx& operator[](std::size_t i) const { return v_[i]; }

  bool projectively_equal(const Projective& other, double tol = 1e-10) const {
    if (other.size() != size()) return false;
    double d2 = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) d2 += std::norm(v_[i] - other.v_[i]);
    return std::sqrt(d2) <= tol;
  }

 private:
  CVec v_;
};

using HomPoint = Projective<detail::PointTag>;
using HomForm = Projective<detail::FormTag>;

// Convenience constructors in the affine chart x_{n} = 1 (last coordinate).
HomPoint affine_point(std::span<const cplx> z);
HomPoint affine_point(cplx z);  // (z, 1) in CP^1
HomPoint point_at_infinity_cp1();  // (1, 0)

// The form [1 : -p] whose kernel in CP^1 is the point p (p = infinity gives [0 : 1]).
HomForm puncture_form(cplx p);
HomForm puncture_form_at_infinity();

// A finite, deduplicated, ordered family of forms. Storage is one contiguous
// row-major block so that |Lambda| ~ 10^6 stays cache friendly.
class LambdaSet {
 public:
  LambdaSet(const std::vector<HomForm>& forms, std::string label = {});

  // Rows of n+1 coefficients each; every row is canonicalized. Rows that are
  // projectively equal to an earlier row (within `dedup_tol`) are dropped.
  static LambdaSet from_rows(int dim, std::span<const cplx> rows, std::string label = {},
                             double dedup_tol = 1e-12);

  std::size_t size() const noexcept { return count_; }
  int dim() const noexcept { return dim_; }
  std::size_t stride() const noexcept { return static_cast<std::size_t>(dim_) + 1; }
  std::span<const cplx> coeffs(std::size_t i) const {
    return {data_.data() + i * stride(), stride()};
  }
  std::span<const cplx> data() const noexcept { return data_; }
  HomForm form(std::size_t i) const;
  const std::string& label() const noexcept { return label_; }

 private:
  LambdaSet() = default;
  void append_unique(std::span<const cplx> canonical_row, double dedup_tol);

  int dim_ = 0;
  std::size_t count_ = 0;
  CVec data_;
  std::string label_;
};

// An invertible (n+1)x(n+1) complex matrix acting on points by g and on forms
// by the inverse transpose, so that phi(omega) is preserved up to scale.
class ProjTransform {
 public:
  explicit ProjTransform(Eigen::MatrixXcd matrix);
  static ProjTransform identity(int dim);

  int dim() const noexcept { return static_cast<int>(m_.rows()) - 1; }
  const Eigen::MatrixXcd& matrix() const noexcept { return m_; }
  const Eigen::MatrixXcd& inverse_transpose() const noexcept { return inv_t_; }

 private:
  Eigen::MatrixXcd m_;
  Eigen::MatrixXcd inv_t_;
};

// Bilinear pairing sum_i coeffs_i * coords_i of the canonical representatives.
cplx pairing(const HomForm& phi, const HomPoint& omega);
cplx pairing(std::span<const cplx> phi, std::span<const cplx> omega);

// Cross-ratio of four points of CP^1 given as homogeneous 2-vectors, with the
// convention [a,b,c,d] = (d-b)(c-a)/((d-a)(c-b)) in any affine chart.
cplx cross_ratio_cp1(std::span<const cplx> a, std::span<const cplx> b, std::span<const cplx> c,
                     std::span<const cplx> d);

// Same cross-ratio for four points on a common projective line of P^n.
// Throws DegenerateInput if the points are not collinear (residual > 1e-9)
// or if a = b, a = d or b = c.
cplx cross_ratio_points(const HomPoint& a, const HomPoint& b, const HomPoint& c, const HomPoint& d);

// phi(w) phi'(w') / (phi(w') phi'(w)) on raw lifts; no normalization, no checks.
cplx cross_ratio_lifts(std::span<const cplx> phi, std::span<const cplx> phi2,
                       std::span<const cplx> omega, std::span<const cplx> omega2);

// [phi, phi', omega, omega']. Equal points short-circuit to 1. Throws
// AdmissibilityError when any of the four pairings is below the floor.
cplx cross_ratio(const HomForm& phi, const HomForm& phi2, const HomPoint& omega,
                 const HomPoint& omega2, const Tolerances& tol = {});

// ker(phi) intersected with the line (omega omega'), i.e. the normalized
// point phi(omega') omega - phi(omega) omega'.
HomPoint project_form_to_line(const HomForm& phi, const HomPoint& omega, const HomPoint& omega2);

HomPoint apply_transform(const ProjTransform& g, const HomPoint& x);
HomForm apply_transform(const ProjTransform& g, const HomForm& phi);
LambdaSet apply_transform(const ProjTransform& g, const LambdaSet& lambda);

}  // namespace genhilbert
