#pragma once

// Lambda a closed subset of RP^1 = R u {inf}: complementary components,
// distances between points and between components, the measure mu_{Lambda,I},
// the Basmajian-type identity for self-similar sets and quasi-Moebius
// extension.
//
// Points of RP^1 are doubles with +inf standing for the point at infinity
// (-inf is read as +inf). Arcs run in the positive direction of RP^1 from
// `lo` to `hi`; lo > hi means the arc passes through infinity.

#include <array>
#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include <Eigen/Dense>

namespace genhilbert {

double rp1(double x);  // normalizes -inf to +inf; rejects NaN

struct Arc {
  double lo = 0, hi = 0;
  bool is_point() const noexcept { return lo == hi; }
  bool wraps() const noexcept { return lo > hi; }
};

bool closed_arc_contains(const Arc& a, double x);
bool open_arc_contains(const Arc& a, double x);  // (a, a) is RP^1 minus a

// [a,b,c,d] = (d-b)(c-a)/((d-a)(c-b)) on RP^1, infinity allowed anywhere.
double cross_ratio_rp1(double a, double b, double c, double d);

// Orientation-preserving real Moebius map sending the open arc I to (-inf, 0):
// I.lo -> inf, I.hi -> 0.
struct Normalizer {
  Eigen::Matrix2d m;
  double operator()(double x) const;
};
Normalizer normalizer(const Arc& I);

double mobius_apply(const Eigen::Matrix2d& m, double x);

// Point at fraction s in (0,1) along an arc; (a, a) is the whole circle.
double arc_point(const Arc& a, double s);

class RealLambda {
 public:
  // Pieces: closed arcs (lo == hi for isolated points), pairwise disjoint.
  explicit RealLambda(std::vector<Arc> pieces);
  static RealLambda points(std::vector<double> pts);

  const std::vector<Arc>& pieces() const noexcept { return pieces_; }
  // Open complementary arcs (hi_k, lo_{k+1}) in cyclic order.
  const std::vector<Arc>& components() const noexcept { return components_; }

  bool contains(double x) const;
  // Index of the component containing x; AdmissibilityError if x is in Lambda.
  std::size_t component_of(double x) const;

  // Adds isolated points not already covered.
  RealLambda with_points(const std::vector<double>& pts) const;

 private:
  std::vector<Arc> pieces_;
  std::vector<Arc> components_;
};

// d_Lambda(x, x') using only the endpoint forms of the components of x and x'.
double point_distance(const RealLambda& lam, double x, double x2);
// Same quantity from the forms of every piece endpoint plus `interior`
// samples inside each non-degenerate piece.
double point_distance_brute_force(const RealLambda& lam, double x, double x2, int interior = 8);

// Distance between two components with disjoint closures:
// 2 arccoth sqrt([I'.lo, I'.hi, I.lo, I.hi]).
double component_distance(const Arc& I, const Arc& J);
double component_distance(const RealLambda& lam, std::size_t i, std::size_t j);

struct ProjectionGap {
  double delta = 0;                 // ln|[a,b,c,d]|
  std::complex<double> foot_c, foot_d;  // projections of c, d onto the geodesic (ab) in H^2
  double residual = 0;              // max distance of a foot from the geodesic
};

ProjectionGap hyperbolic_projection_gap(double a, double b, double c, double d);

// A finite union of components and of closed sub-arcs of Lambda.
struct MeasurableSet {
  std::vector<std::size_t> components;
  std::vector<Arc> lambda_parts;
};

// mu_{Lambda,I}(E): ln [I'.lo, I'.hi, I.lo, I.hi] for each component I' in E
// (= 2 ln coth(d/2)) plus the dx/x measure of E n Lambda after moving I to (-inf,0).
double measure(const RealLambda& lam, std::size_t I, const MeasurableSet& E);
// nu_I of a closed arc disjoint from I.
double nu_measure(const Arc& I, const Arc& piece);
// mu of the gap J seen from I: ln [J.lo, J.hi, I.lo, I.hi].
double gap_measure(const Arc& I, const Arc& J);

class SelfSimilarity {
 public:
  explicit SelfSimilarity(Eigen::Matrix2d m);
  const Eigen::Matrix2d& matrix() const noexcept { return m_; }
  double operator()(double x) const { return mobius_apply(m_, x); }
  double attracting() const noexcept { return attracting_; }
  double repelling() const noexcept { return repelling_; }
  double translation_length() const noexcept { return l_; }
  // Images of all piece endpoints lie in Lambda (up to tol).
  bool preserves(const RealLambda& lam, double tol = 1e-9) const;

 private:
  Eigen::Matrix2d m_;
  double attracting_ = 0, repelling_ = 0, l_ = 0;
};

struct CantorSpec {
  std::vector<Eigen::Matrix2d> maps;
  Arc seed{0, 1};
  int depth = 10;

  // Depth-1 images lie in the seed and are pairwise disjoint.
  bool open_set_condition() const;
  // Union of the images of the seed under all words of length `k`.
  std::vector<Arc> approximant_pieces(int k) const;
  RealLambda approximant(int k) const { return RealLambda(approximant_pieces(k)); }
};

struct BasmajianReport {
  int depth = 0;
  std::size_t gap_count = 0;
  double S = 0;           // sum of gap measures in D
  double continuous = 0;  // nu of Lambda n D
  double T = 0;           // S + continuous
  double tail_bound = 0;  // l - S <= tail_bound
  double l = 0;           // translation length
};

// One evaluation for a given Lambda: f preserves the component I_f between its
// fixed points, D is the arc from x to f(x) away from I_f.
BasmajianReport basmajian_identity(const RealLambda& lam, const SelfSimilarity& f, double x);

// Depth 1..spec.depth on the IFS attractor approximants (plus the fixed points
// of f and `extra_points`). x defaults to the attracting fixed point of the
// next map after the generator.
std::vector<BasmajianReport> basmajian_check(const CantorSpec& spec, std::size_t generator,
                                             std::optional<double> x = std::nullopt,
                                             const std::vector<double>& extra_points = {});

// Order-preserving correspondence between finite sets of reals with 0 -> 0,
// 1 -> 1 (infinity is fixed implicitly).
class QMMap {
 public:
  QMMap(std::vector<double> src, std::vector<double> dst);
  // Rescales both sides affinely so that src[i0], src[i1] and their images
  // become 0 and 1.
  static QMMap affine_normalized(std::vector<double> src, std::vector<double> dst,
                                 std::size_t i0 = 0, std::size_t i1 = 1);

  const std::vector<double>& src() const noexcept { return src_; }
  const std::vector<double>& dst() const noexcept { return dst_; }
  double operator()(double x) const;  // on src points only

 private:
  std::vector<double> src_, dst_;
};

// Empirical quasi-Moebius constant over `samples` random quadruples of
// src u {inf} plus the structured quadruples [inf,0,1,t] and [inf,t,0,t']
// (t, t' consecutive).
double empirical_qm_constant(const QMMap& F, std::size_t samples, unsigned seed = 1);

// Piecewise extension: affine on bounded gaps, translation on the two
// unbounded pieces, infinity fixed.
class QMExtension {
 public:
  explicit QMExtension(QMMap F);
  double operator()(double x) const;
  const QMMap& map() const noexcept { return F_; }
  // max(max slope, 1 / min slope) of the piecewise-affine extension.
  double bilipschitz_constant() const;

 private:
  QMMap F_;
};

QMExtension qm_extend(const QMMap& F);

// max over `samples` random quadruples of reals of the cross-ratio distortion.
double extension_qm_constant(const QMExtension& E, double lo, double hi, std::size_t samples,
                             unsigned seed = 2);

}  // namespace genhilbert
