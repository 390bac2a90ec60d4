#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "shrinkdist/ext_real.hpp"

namespace shrinkdist {

namespace detail {
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934;
inline constexpr double kTinyProbability = 1e-300;
}  // namespace detail

/// Standard normal density.
inline double phi(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("phi: argument must be finite");
  return detail::kInvSqrt2Pi * std::exp(-0.5 * x * x);
}

/// Standard normal cdf through erfc; probabilities below 1e-300 are reported as 0.
inline double Phi(double x) {
  if (std::isnan(x)) throw std::invalid_argument("Phi: NaN argument");
  if (x == -std::numeric_limits<double>::infinity()) return 0.0;
  if (x == std::numeric_limits<double>::infinity()) return 1.0;
  const double p = 0.5 * std::erfc(-x * std::numbers::sqrt2 / 2.0);
  return p < detail::kTinyProbability ? 0.0 : p;
}

inline double Phi(const ExtReal& x) {
  if (x.is_neg_inf()) return 0.0;
  if (x.is_pos_inf()) return 1.0;
  return Phi(x.value());
}

/// Upper tail 1 - Phi(x), accurate where Phi(x) is close to one.
inline double Phi_upper(double x) { return Phi(-x); }

/// Phi(b) - Phi(a) for a <= b, computed on the side of the origin where it
/// does not cancel.
inline double Phi_diff(double a, double b) {
  if (a > 0.0) return Phi(-a) - Phi(-b);
  return Phi(b) - Phi(a);
}

/// Standard normal quantile by bracketed bisection finished with one Newton step.
/// Intended for reporting and diagnostics; the sampler uses normal_quantile_fast.
inline double Phi_inv(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("Phi_inv: p must lie in (0,1)");
  // 1 - p is exact for p >= 1/2; solving in the lower tail keeps resolution.
  if (p > 0.5) return -Phi_inv(1.0 - p);
  double lo = -40.0;
  double hi = 40.0;
  for (int i = 0; i < 200 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (Phi(mid) < p ? lo : hi) = mid;
  }
  double x = 0.5 * (lo + hi);
  const double d = phi(x);
  if (d > 0.0) {
    const double step = (Phi(x) - p) / d;
    if (std::abs(step) < hi - lo + 1e-12) x -= step;
  }
  return x;
}

/// Wichura's AS241 (PPND16) rational approximation, relative accuracy about 1e-16.
inline double normal_quantile_fast(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("normal_quantile_fast: p must lie in (0,1)");
  const double q = p - 0.5;
  if (std::abs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    const double num =
        (((((((2509.0809287301226727 * r + 33430.575583588128105) * r + 67265.770927008700853) * r +
             45921.953931549871457) * r + 13731.693765509461125) * r + 1971.5909503065514427) * r +
          133.14166789178437745) * r + 3.387132872796366608);
    const double den =
        (((((((5226.495278852545925 * r + 28729.085735721942674) * r + 39307.89580009271061) * r +
             21213.794301586595867) * r + 5394.1960214247511077) * r + 687.1870074920579083) * r +
          42.313330701600911252) * r + 1.0);
    return q * num / den;
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    const double num =
        (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r + 0.24178072517745061177) * r +
             1.27045825245236838258) * r + 3.64784832476320460504) * r + 5.7694972214606914055) * r +
          4.6303378461565452959) * r + 1.42343711074968357734);
    const double den =
        (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r + 0.0151986665636164571966) * r +
             0.14810397642748007459) * r + 0.68976733498510000455) * r + 1.6763848301838038494) * r +
          2.05319162663775882187) * r + 1.0);
    val = num / den;
  } else {
    r -= 5.0;
    const double num =
        (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r + 0.0012426609473880784386) * r +
             0.026532189526576123093) * r + 0.29656057182850489123) * r + 1.7848265399172913358) * r +
          5.4637849111641143699) * r + 6.6579046435011037772);
    const double den =
        (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r + 1.8463183175100546818e-5) * r +
             7.868691311456132591e-4) * r + 0.0148753612908506148525) * r + 0.13692988092273580531) * r +
          0.59983220655588793769) * r + 1.0);
    val = num / den;
  }
  return q < 0.0 ? -val : val;
}

/// Total variation distance between the n-sample Gaussian location experiments
/// at theta1 and theta2 (unit variance). Equals the distance between the laws of
/// the sufficient statistic, N(theta1, 1/n) and N(theta2, 1/n).
inline double gaussian_tv(long long n, double theta1, double theta2) {
  if (n < 1) throw std::invalid_argument("gaussian_tv: n must be >= 1");
  const double half_gap = std::sqrt(static_cast<double>(n)) * std::abs(theta1 - theta2) / 2.0;
  return Phi_diff(-half_gap, half_gap);
}

}  // namespace shrinkdist
