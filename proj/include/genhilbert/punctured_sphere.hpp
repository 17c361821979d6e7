#pragma once

// CP^1 minus finitely many punctures, with Lambda the point forms [1 : -p].

#include <optional>
#include <vector>

#include "genhilbert/metric.hpp"
#include "genhilbert/projective.hpp"

namespace genhilbert {

struct RiemannPoint {
  cplx z{0, 0};
  bool inf = false;

  static RiemannPoint infinity() { return {cplx(0, 0), true}; }
  HomPoint hom() const { return inf ? point_at_infinity_cp1() : affine_point(z); }
  HomForm form() const { return inf ? puncture_form_at_infinity() : puncture_form(z); }
  bool operator==(const RiemannPoint& o) const { return inf == o.inf && (inf || z == o.z); }
};

// Four or more points are concyclic (or collinear) iff every cross-ratio is
// real; fewer than four points count as concyclic.
bool is_concyclic(const std::vector<RiemannPoint>& pts, double tol = 1e-9);

class PunctureSet {
 public:
  explicit PunctureSet(std::vector<RiemannPoint> punctures, Tolerances tol = {});

  std::size_t size() const noexcept { return pts_.size(); }
  const std::vector<RiemannPoint>& points() const noexcept { return pts_; }
  const RiemannPoint& operator[](std::size_t i) const { return pts_[i]; }
  bool concyclic() const noexcept { return concyclic_; }
  const AdmissiblePair& pair() const noexcept { return pair_; }

 private:
  std::vector<RiemannPoint> pts_;
  bool concyclic_ = true;
  AdmissiblePair pair_;
};

// max_j Re(phi_j(v)/phi_j(m)) - min_j (same), phi_j(z,1) = z - p_j; a puncture
// at infinity contributes 0.
double finsler_norm_punctured(const PunctureSet& ps, cplx m, cplx v);

struct CuspChart {
  std::size_t index = 0;
  cplx center{0, 0};
  double r_max = 0;  // below half the distance to the nearest other puncture
};

// The puncture must be finite; see qi_ratio_scan for a cusp at infinity.
CuspChart cusp_chart(const PunctureSet& ps, std::size_t k);

// sqrt(a^2/r^2 + r^2 b^2) for a d/dr + b d/dt at center + r e^{it}.
double cusp_hyperbolic_norm(const CuspChart& chart, double r, double t, double a, double b);

struct QiRow {
  double r, alpha, theta, finsler, hyperbolic, ratio;
};

struct QiReport {
  std::vector<QiRow> rows;
  double max_ratio = 0, min_ratio = 0;
  double C = 0;                    // max(max_ratio, 1/min_ratio)
  std::vector<int> decades;        // floor(log10 r), ascending r order
  std::vector<double> decade_C;    // C restricted to each decade
  bool stable = false;             // two finest decades agree within 10%
};

// Compares the Finsler norm of v = e^{i(theta+alpha)} at m = p_k + r e^{i theta}
// with the cusp-local hyperbolic norm. A cusp at infinity is first moved to a
// finite point by a Moebius map (the norm is invariant).
QiReport qi_ratio_scan(const PunctureSet& ps, std::size_t k, const std::vector<double>& r_grid,
                       const std::vector<double>& alpha_grid,
                       const std::vector<double>& theta_grid = {0.0});

struct MaximizerInterval {
  std::vector<bool> attains;  // per alpha: puncture k realizes the max
  bool is_interval = false;   // the attaining alphas are contiguous on the grid
  bool contains_zero = false; // alpha = 0 strictly inside the attaining run
};

// alpha_grid must be increasing.
MaximizerInterval maximizer_interval(const PunctureSet& ps, std::size_t k, double r, double theta,
                                     const std::vector<double>& alpha_grid);

}  // namespace genhilbert
