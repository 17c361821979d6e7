#include "acceptance/oracles.hpp"

#include <cmath>
#include <functional>
#include <numbers>

namespace genhilbert::oracles {

namespace {

// ln |r e^{-i theta} - 1|
double log_mod(double r, double theta) {
  return 0.5 * std::log(1.0 - 2.0 * r * std::cos(theta) + r * r);
}

// argmax of a unimodal f on [a, b]
double golden_argmax(const std::function<double(double)>& f, double a, double b) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
    const double c = b - g * (b - a), d = a + g * (b - a);
    if (f(c) > f(d)) b = d;
    else a = c;
  }
  return 0.5 * (a + b);
}

}  // namespace

double disc_two_angle_max(double r) {
  // phi_theta(z, 1) = z e^{-i theta} - 1; omega = 0, omega' = r.
  // ln|CR| = ln|phi_theta'(r)| - ln|phi_theta(r)| (|phi(0)| = 1 for every form).
  const int N = 720;
  const double h = 2 * std::numbers::pi / N;
  auto F = [&](double th, double th2) { return log_mod(r, th2) - log_mod(r, th); };
  int bi = 0, bj = 0;
  double best = -1e300;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double v = F(i * h, j * h);
      if (v > best) best = v, bi = i, bj = j;
    }
  // alternate one-dimensional refinements around the best cell
  double th = bi * h, th2 = bj * h;
  for (int pass = 0; pass < 3; ++pass) {
    th = golden_argmax([&](double t) { return F(t, th2); }, th - h, th + h);
    th2 = golden_argmax([&](double t) { return F(th, t); }, th2 - h, th2 + h);
  }
  return std::max(best, F(th, th2));
}

std::vector<double> triadic_gap_sums(int depth) {
  std::vector<long double> per_level(depth + 1, 0.0L);
  // interval [a, b] at level k; its middle third is a gap of level k+1
  std::function<void(double, double, int)> rec = [&](double a, double b, int k) {
    if (k >= depth) return;
    const double g0 = a + (b - a) / 3.0, g1 = a + 2.0 * (b - a) / 3.0;
    if (g0 >= 1.0 / 3.0 - 1e-15) per_level[k + 1] += std::log(static_cast<long double>(g1) / g0);
    if (b > 1.0 / 3.0 + 1e-15) {
      rec(a, g0, k + 1);
      rec(g1, b, k + 1);
    }
  };
  rec(0.0, 1.0, 0);
  std::vector<double> S(depth + 1, 0.0);
  long double acc = 0;
  for (int k = 1; k <= depth; ++k) S[k] = static_cast<double>(acc += per_level[k]);
  return S;
}

double rp1_distance_via_cp1(const RealLambda& lam, double x, double x2, int interior) {
  std::vector<HomForm> forms;
  auto add = [&](double p) {
    forms.push_back(std::isinf(p) ? puncture_form_at_infinity() : puncture_form(cplx(p, 0)));
  };
  for (const auto& a : lam.pieces()) {
    add(a.lo);
    if (a.is_point()) continue;
    add(a.hi);
    for (int k = 1; k <= interior; ++k) add(arc_point(a, k / (interior + 1.0)));
  }
  AdmissiblePair pair(LambdaSet(forms, "rp1"));
  auto hom = [](double p) {
    return std::isinf(p) ? point_at_infinity_cp1() : affine_point(cplx(p, 0));
  };
  return distance(pair, hom(x), hom(x2));
}

CVec gaussian_vector(std::mt19937_64& rng, std::size_t n) {
  std::normal_distribution<double> N01;
  CVec v(n);
  for (auto& c : v) c = cplx(N01(rng), N01(rng));
  return v;
}

}  // namespace genhilbert::oracles
