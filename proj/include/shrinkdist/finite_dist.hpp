#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "shrinkdist/estimators.hpp"
#include "shrinkdist/mixture.hpp"
#include "shrinkdist/normal.hpp"

namespace shrinkdist {

/// Sample size and true location of the unit-variance Gaussian location model.
struct ModelPoint {
  long long n = 1;
  double theta = 0.0;

  ModelPoint(long long n_, double theta_) : n(n_), theta(theta_) {
    if (n < 1) throw std::invalid_argument("ModelPoint: n must be >= 1");
    if (!std::isfinite(theta)) throw std::invalid_argument("ModelPoint: theta must be finite");
  }

  double sqrt_n() const { return std::sqrt(static_cast<double>(n)); }
};

namespace detail {

// Law of sqrt(n)(estimate - theta) written in terms of the two offsets
// center = sqrt(n) theta and excision = sqrt(n) eta. The conservative limit
// laws have the same shape with (nu, e) in place of the offsets.
inline MixtureDistribution offset_law(EstimatorKind kind, double center, double excision, double scad_a) {
  const double A = center;
  const double E = excision;
  const ExtReal ninf = ExtReal::neg_inf();
  const ExtReal pinf = ExtReal::pos_inf();
  std::vector<Atom> atoms{Atom{ExtReal(-A), Phi_diff(-A - E, -A + E)}};
  std::vector<GaussPiece> pieces;
  switch (kind) {
    case EstimatorKind::Hard:
      pieces.push_back(GaussPiece{1.0, 1.0, 0.0, ninf, ExtReal(-A - E)});
      pieces.push_back(GaussPiece{1.0, 1.0, 0.0, ExtReal(-A + E), pinf});
      break;
    case EstimatorKind::Soft:
      pieces.push_back(GaussPiece{1.0, 1.0, -E, ninf, ExtReal(-A)});
      pieces.push_back(GaussPiece{1.0, 1.0, E, ExtReal(-A), pinf});
      break;
    case EstimatorKind::Scad: {
      const double a = scad_a;
      const double k = (a - 2.0) / (a - 1.0);
      // f1, f2, f3 for ybar > eta, then their mirror images for ybar < -eta.
      pieces.push_back(GaussPiece{1.0, 1.0, E, ExtReal(-A), ExtReal(E - A)});
      pieces.push_back(GaussPiece{k, k, (a * E - A) / (a - 1.0), ExtReal(E - A), ExtReal(a * E - A)});
      pieces.push_back(GaussPiece{1.0, 1.0, 0.0, ExtReal(a * E - A), pinf});
      pieces.push_back(GaussPiece{1.0, 1.0, -E, ExtReal(-E - A), ExtReal(-A)});
      pieces.push_back(GaussPiece{k, k, (-A - a * E) / (a - 1.0), ExtReal(-a * E - A), ExtReal(-E - A)});
      pieces.push_back(GaussPiece{1.0, 1.0, 0.0, ninf, ExtReal(-a * E - A)});
      break;
    }
  }
  return MixtureDistribution(std::move(atoms), std::move(pieces));
}

}  // namespace detail

/// P(estimate = 0), the same for all three estimators.
inline double atom_weight(const ModelPoint& point, const TuningPlan& tuning) {
  const double A = point.sqrt_n() * point.theta;
  const double E = point.sqrt_n() * tuning.eta();
  return Phi_diff(-A - E, -A + E);
}

/// Exact law of sqrt(n)(estimate - theta).
inline MixtureDistribution finite_sample_dist(EstimatorKind kind, const ModelPoint& point, const TuningPlan& tuning) {
  return detail::offset_law(kind, point.sqrt_n() * point.theta, point.sqrt_n() * tuning.eta(), tuning.scad_a());
}

/// Exact law of (estimate - theta) / eta.
inline MixtureDistribution rescaled_dist(EstimatorKind kind, const ModelPoint& point, const TuningPlan& tuning) {
  return finite_sample_dist(kind, point, tuning).rescaled(point.sqrt_n() * tuning.eta());
}

inline double mixture_cdf(const MixtureDistribution& dist, double x) { return dist.cdf(x); }
inline double mixture_density_ac(const MixtureDistribution& dist, double x) { return dist.density_ac(x); }

/// E[n (estimate - theta)^2], from closed-form truncated Gaussian moments.
inline double scaled_risk(EstimatorKind kind, const ModelPoint& point, const TuningPlan& tuning) {
  return finite_sample_dist(kind, point, tuning).moment(2);
}

}  // namespace shrinkdist
