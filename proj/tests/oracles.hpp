#pragma once

// Independent reference computations used by the test suite.

#include <algorithm>
#include <cmath>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "shrinkdist/shrinkdist.hpp"

namespace oracle {

using mp50 = boost::multiprecision::cpp_bin_float_50;

inline double Phi_mp(double x) {
  const mp50 v = 0.5 * boost::multiprecision::erfc(-mp50(x) / boost::multiprecision::sqrt(mp50(2)));
  return static_cast<double>(v);
}

inline double phi_mp(double x) {
  const mp50 pi = boost::math::constants::pi<mp50>();
  const mp50 v = boost::multiprecision::exp(-mp50(x) * mp50(x) / 2) / boost::multiprecision::sqrt(2 * pi);
  return static_cast<double>(v);
}

inline double std_normal_density(double z) { return std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI); }

inline double integrate(const std::function<double(double)>& f, double a, double b) {
  if (!(a < b)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-13);
}

inline double integrate_normal(double a, double b) {
  a = std::max(a, -40.0);
  b = std::min(b, 40.0);
  return integrate(std_normal_density, a, b);
}

// SCAD estimate from the penalized criterion 1/2 (y - t)^2 + p(|t|), with the
// usual SCAD penalty p and lambda = eta, minimized over a fine grid.
inline double scad_penalty(double t, double lambda, double a) {
  t = std::abs(t);
  if (t <= lambda) return lambda * t;
  if (t <= a * lambda) return -(t * t - 2.0 * a * lambda * t + lambda * lambda) / (2.0 * (a - 1.0));
  return (a + 1.0) * lambda * lambda / 2.0;
}

inline double scad_grid_argmin(double ybar, double eta, double a, double step) {
  const double lo = std::min(0.0, ybar) - 2.0 * eta;
  const double hi = std::max(0.0, ybar) + 2.0 * eta;
  double best = 0.0;
  double best_val = std::numeric_limits<double>::infinity();
  for (double t = lo; t <= hi; t += step) {
    const double v = 0.5 * (ybar - t) * (ybar - t) + scad_penalty(t, eta, a);
    if (v < best_val) {
      best_val = v;
      best = t;
    }
  }
  return best;
}

// F(x) = P(sqrt(n)(estimate - theta) <= x), integrating the N(0,1) density of
// z = sqrt(n)(ybar - theta) over {z : g(z) <= x}. The estimator map is split
// at its branch points; on each branch g is continuous and nondecreasing, so
// the set is an interval located by bisection.
inline double finite_cdf(shrinkdist::EstimatorKind kind, long long n, double theta, double eta, double a, double x) {
  const double rn = std::sqrt(static_cast<double>(n));
  const shrinkdist::TuningPlan tuning(eta, a);
  auto g = [&](double z) { return rn * (shrinkdist::estimate(kind, theta + z / rn, tuning) - theta); };
  std::vector<double> cuts{-40.0, 40.0};
  for (double b : {eta, 2.0 * eta, a * eta}) {
    cuts.push_back(rn * (b - theta));
    cuts.push_back(rn * (-b - theta));
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [](double c) { return c < -40.0 || c > 40.0; }), cuts.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    double lo = cuts[i];
    double hi = cuts[i + 1];
    if (!(lo < hi)) continue;
    // Interior samples avoid the branch endpoints themselves.
    const double eps = 1e-12 * (1.0 + std::abs(lo) + std::abs(hi));
    const double glo = g(lo + eps);
    const double ghi = g(hi - eps);
    if (glo > x) continue;
    if (ghi <= x) {
      total += integrate_normal(lo, hi);
      continue;
    }
    double a0 = lo, b0 = hi;
    for (int k = 0; k < 200; ++k) {
      const double m = 0.5 * (a0 + b0);
      (g(m) <= x ? a0 : b0) = m;
    }
    total += integrate_normal(lo, a0);
  }
  return total;
}

// Integral of the absolutely continuous density of `d` over (-inf, x] by
// Gauss-Kronrod panels split at every breakpoint, plus the atoms <= x. The
// lower limit sits 60 standard deviations below the lowest piece centre.
inline double mixture_cdf_quadrature(const shrinkdist::MixtureDistribution& d, double x) {
  double lo = -60.0;
  for (const auto& p : d.pieces()) lo = std::min(lo, (-p.shift - 60.0) / p.slope);
  double total = 0.0;
  for (const auto& at : d.atoms())
    if (at.location <= shrinkdist::ExtReal(x)) total += at.weight;
  std::vector<double> cuts{lo, x};
  for (double b : d.breakpoints())
    if (b > lo && b < x) cuts.push_back(b);
  // Pieces with steep slopes: add their z = +-40 endpoints so panels see the mass.
  for (const auto& p : d.pieces())
    for (double z : {-40.0, -8.0, 0.0, 8.0, 40.0}) {
      const double c = (z - p.shift) / p.slope;
      if (c > lo && c < x) cuts.push_back(c);
    }
  std::sort(cuts.begin(), cuts.end());
  auto f = [&](double u) { return d.density_ac(u); };
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) total += integrate(f, cuts[i], cuts[i + 1]);
  return total;
}

}  // namespace oracle
