#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace shrinkdist {

enum class EstimatorKind { Hard, Soft, Scad };

inline constexpr double kDefaultScadA = 3.7;

inline std::string_view to_string(EstimatorKind k) {
  switch (k) {
    case EstimatorKind::Hard: return "hard";
    case EstimatorKind::Soft: return "soft";
    case EstimatorKind::Scad: return "scad";
  }
  return "?";
}

inline EstimatorKind parse_kind(std::string_view s) {
  if (s == "hard") return EstimatorKind::Hard;
  if (s == "soft") return EstimatorKind::Soft;
  if (s == "scad") return EstimatorKind::Scad;
  throw std::invalid_argument("unknown estimator kind '" + std::string(s) + "' (expected hard, soft or scad)");
}

inline void require_scad_a(double a);

/// Threshold eta and SCAD shape a. Validated on construction.
class TuningPlan {
 public:
  explicit TuningPlan(double eta, double scad_a = kDefaultScadA) : eta_(eta), scad_a_(scad_a) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw std::invalid_argument("invalid tuning: requires eta > 0");
    require_scad_a(scad_a);
  }

  double eta() const { return eta_; }
  double scad_a() const { return scad_a_; }

 private:
  double eta_;
  double scad_a_;
};

inline void require_scad_a(double a) {
  if (!(a > 2.0) || !std::isfinite(a)) throw std::invalid_argument("invalid tuning: requires scad_a > 2");
}

inline double sign(double x) { return static_cast<double>((x > 0.0) - (x < 0.0)); }

/// Point estimate of theta from the sample mean.
inline double estimate(EstimatorKind kind, double ybar, const TuningPlan& tuning) {
  if (!std::isfinite(ybar)) throw std::invalid_argument("estimate: ybar must be finite");
  const double eta = tuning.eta();
  const double mag = std::abs(ybar);
  if (mag <= eta) return 0.0;
  switch (kind) {
    case EstimatorKind::Hard:
      return ybar;
    case EstimatorKind::Soft:
      return ybar - sign(ybar) * eta;
    case EstimatorKind::Scad: {
      if (mag <= 2.0 * eta) return ybar - sign(ybar) * eta;
      const double a = tuning.scad_a();
      if (mag > a * eta) return ybar;
      const double v = ((a - 1.0) * ybar - sign(ybar) * a * eta) / (a - 2.0);
      // Rounding can push the interpolation a few ulps outside [soft, hard].
      const double soft = ybar - sign(ybar) * eta;
      return ybar > 0.0 ? std::clamp(v, soft, ybar) : std::clamp(v, ybar, soft);
    }
  }
  return 0.0;
}

/// Penalized least-squares criterion in sufficient-statistic form,
/// n (ybar - theta)^2 + penalty, for Hard and Soft. The SCAD penalty is not
/// provided; its estimator is defined by its closed-form solution.
inline double penalized_objective(EstimatorKind kind, double theta, double ybar, long long n,
                                  const TuningPlan& tuning) {
  if (!std::isfinite(theta) || !std::isfinite(ybar))
    throw std::invalid_argument("penalized_objective: theta and ybar must be finite");
  if (n < 1) throw std::invalid_argument("penalized_objective: n must be >= 1");
  const double nn = static_cast<double>(n);
  const double eta = tuning.eta();
  const double fit = nn * (ybar - theta) * (ybar - theta);
  switch (kind) {
    case EstimatorKind::Hard: {
      const double excess = std::abs(theta) - eta;
      const double inside = std::abs(theta) < eta ? excess * excess : 0.0;
      return fit + nn * (eta * eta - inside);
    }
    case EstimatorKind::Soft:
      return fit + 2.0 * nn * eta * std::abs(theta);
    case EstimatorKind::Scad:
      throw std::logic_error("objective unavailable; argmin verified against closed form only");
  }
  return 0.0;
}

/// |ybar| at or below this value yields a zero estimate for every kind.
inline double zero_event_threshold(const TuningPlan& tuning) { return tuning.eta(); }

}  // namespace shrinkdist
