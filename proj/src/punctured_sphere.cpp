#include "genhilbert/punctured_sphere.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace genhilbert {

namespace {

std::array<cplx, 2> hom2(const RiemannPoint& p) {
  return p.inf ? std::array<cplx, 2>{1.0, 0.0} : std::array<cplx, 2>{p.z, 1.0};
}

LambdaSet forms_of(const std::vector<RiemannPoint>& pts) {
  std::vector<HomForm> f;
  f.reserve(pts.size());
  for (const auto& p : pts) f.push_back(p.form());
  return LambdaSet(f, "punctures");
}

// x_j = Re(v / (m - p_j)), 0 for the puncture at infinity.
std::vector<double> summands(const PunctureSet& ps, cplx m, cplx v) {
  std::vector<double> x(ps.size());
  const double floor = ps.pair().tol().admissibility;
  for (std::size_t j = 0; j < ps.size(); ++j) {
    const auto& p = ps[j];
    if (p.inf) {
      x[j] = 0;
      continue;
    }
    const cplx d = m - p.z;
    // same floor as the canonical pairing |phi_j(m)|
    if (std::abs(d) < floor * std::sqrt((1 + std::norm(m)) * (1 + std::norm(p.z))))
      throw AdmissibilityError("base point at a puncture", j);
    x[j] = (v / d).real();
  }
  return x;
}

}  // namespace

bool is_concyclic(const std::vector<RiemannPoint>& pts, double tol) {
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      if (pts[i] == pts[j]) throw DegenerateInput("repeated puncture");
  if (pts.size() < 4) return true;
  const auto a = hom2(pts[0]), b = hom2(pts[1]), c = hom2(pts[2]);
  for (std::size_t k = 3; k < pts.size(); ++k) {
    const auto d = hom2(pts[k]);
    const cplx cr = cross_ratio_cp1(a, b, c, d);
    if (std::abs(cr.imag()) > tol * std::max(1.0, std::abs(cr))) return false;
  }
  return true;
}

PunctureSet::PunctureSet(std::vector<RiemannPoint> punctures, Tolerances tol)
    : pts_(std::move(punctures)), pair_(forms_of(pts_), tol) {
  concyclic_ = is_concyclic(pts_);
}

double finsler_norm_punctured(const PunctureSet& ps, cplx m, cplx v) {
  const auto x = summands(ps, m, v);
  if (v == cplx(0, 0)) return 0.0;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  return *hi - *lo;
}

CuspChart cusp_chart(const PunctureSet& ps, std::size_t k) {
  if (k >= ps.size()) throw DegenerateInput("puncture index out of range");
  if (ps[k].inf) throw DegenerateInput("cusp chart needs a finite puncture");
  double nearest = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < ps.size(); ++j)
    if (j != k && !ps[j].inf) nearest = std::min(nearest, std::abs(ps[j].z - ps[k].z));
  if (!std::isfinite(nearest)) nearest = 2.0;
  return CuspChart{k, ps[k].z, 0.49 * nearest};
}

double cusp_hyperbolic_norm(const CuspChart& chart, double r, double /*t*/, double a, double b) {
  if (!(r > 0 && r < chart.r_max)) throw DegenerateInput("radius outside the cusp chart");
  return std::sqrt(a * a / (r * r) + r * r * b * b);
}

QiReport qi_ratio_scan(const PunctureSet& ps, std::size_t k, const std::vector<double>& r_grid,
                       const std::vector<double>& alpha_grid,
                       const std::vector<double>& theta_grid) {
  if (k >= ps.size()) throw DegenerateInput("puncture index out of range");
  if (ps.concyclic()) throw DegenerateInput("punctures are concyclic: the pseudo-metric is not a metric");
  if (ps[k].inf) {
    // z -> 1/(z - q) sends infinity to 0 and keeps every other puncture finite.
    double q = 0;
    for (const auto& p : ps.points())
      if (!p.inf) q = std::max(q, std::abs(p.z) + 1.0);
    std::vector<RiemannPoint> moved;
    for (const auto& p : ps.points())
      moved.push_back(p.inf ? RiemannPoint{0.0, false} : RiemannPoint{1.0 / (p.z - q), false});
    return qi_ratio_scan(PunctureSet(moved, ps.pair().tol()), k, r_grid, alpha_grid, theta_grid);
  }
  const auto chart = cusp_chart(ps, k);
  QiReport rep;
  rep.max_ratio = 0;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  std::map<int, std::pair<double, double>> dec;  // decade -> (max, min)
  for (double r : r_grid) {
    const int d = static_cast<int>(std::floor(std::log10(r) + 1e-12));
    auto& slot = dec.try_emplace(d, 0.0, std::numeric_limits<double>::infinity()).first->second;
    for (double th : theta_grid)
      for (double al : alpha_grid) {
        const cplx m = chart.center + std::polar(r, th);
        const cplx v = std::polar(1.0, th + al);
        const double f = finsler_norm_punctured(ps, m, v);
        const double h = cusp_hyperbolic_norm(chart, r, th, std::cos(al), std::sin(al) / r);
        const double q = f / h;
        rep.rows.push_back({r, al, th, f, h, q});
        rep.max_ratio = std::max(rep.max_ratio, q);
        rep.min_ratio = std::min(rep.min_ratio, q);
        slot.first = std::max(slot.first, q);
        slot.second = std::min(slot.second, q);
      }
  }
  rep.C = std::max(rep.max_ratio, 1.0 / rep.min_ratio);
  for (const auto& [d, mm] : dec) {
    rep.decades.push_back(d);
    rep.decade_C.push_back(std::max(mm.first, 1.0 / mm.second));
  }
  if (rep.decade_C.size() >= 2) {
    const double a = rep.decade_C[0], b = rep.decade_C[1];  // two smallest-r decades
    rep.stable = std::isfinite(a) && std::abs(a - b) <= 0.1 * b;
  }
  return rep;
}

MaximizerInterval maximizer_interval(const PunctureSet& ps, std::size_t k, double r, double theta,
                                     const std::vector<double>& alpha_grid) {
  const auto chart = cusp_chart(ps, k);
  MaximizerInterval mi;
  const cplx m = chart.center + std::polar(r, theta);
  for (double al : alpha_grid) {
    const auto x = summands(ps, m, std::polar(1.0, theta + al));
    const auto top = static_cast<std::size_t>(std::max_element(x.begin(), x.end()) - x.begin());
    mi.attains.push_back(top == k);
  }
  // contiguous run?
  std::size_t first = mi.attains.size(), last = 0, runs = 0;
  for (std::size_t i = 0; i < mi.attains.size(); ++i) {
    if (mi.attains[i]) {
      if (i == 0 || !mi.attains[i - 1]) ++runs;
      first = std::min(first, i);
      last = i;
    }
  }
  mi.is_interval = runs == 1;
  if (mi.is_interval)
    mi.contains_zero = alpha_grid[first] < 0 && alpha_grid[last] > 0;
  return mi;
}

}  // namespace genhilbert
