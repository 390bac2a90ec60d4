#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shrinkdist/estimators.hpp"
#include "shrinkdist/finite_dist.hpp"
#include "shrinkdist/mixture.hpp"
#include "shrinkdist/normal.hpp"
#include "shrinkdist/report.hpp"
#include "shrinkdist/rng.hpp"
#include "shrinkdist/selection.hpp"

namespace shrinkdist {

struct SimConfig {
  std::uint64_t seed = 0;
  std::int64_t replications = 1;
  ModelPoint point{1, 0.0};
  TuningPlan tuning{1.0};

  SimConfig(std::uint64_t seed_, std::int64_t reps, ModelPoint point_, TuningPlan tuning_)
      : seed(seed_), replications(reps), point(point_), tuning(tuning_) {
    if (replications < 1) throw std::invalid_argument("SimConfig: replications must be >= 1");
  }
};

/// Draws per substream; substream b covers replications [b * kBatch, (b + 1) * kBatch).
inline constexpr std::int64_t kSimBatch = 1 << 16;

/// Right-continuous empirical cdf of a sample.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("EmpiricalCdf: empty sample");
    std::sort(values_.begin(), values_.end());
  }

  const std::vector<double>& values() const { return values_; }
  std::size_t count() const { return values_.size(); }

  double operator()(double x) const {
    return static_cast<double>(std::upper_bound(values_.begin(), values_.end(), x) - values_.begin()) /
           static_cast<double>(values_.size());
  }

  double left(double x) const {
    return static_cast<double>(std::lower_bound(values_.begin(), values_.end(), x) - values_.begin()) /
           static_cast<double>(values_.size());
  }

  /// Smallest sample value v with empirical cdf(v) >= p, p in (0, 1].
  double quantile(double p) const {
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("EmpiricalCdf::quantile: p must lie in (0,1]");
    const double k = std::ceil(p * static_cast<double>(values_.size()));
    const auto idx = static_cast<std::size_t>(std::max(1.0, k)) - 1;
    return values_[std::min(idx, values_.size() - 1)];
  }

  std::size_t count_equal(double v) const {
    const auto [lo, hi] = std::equal_range(values_.begin(), values_.end(), v);
    return static_cast<std::size_t>(hi - lo);
  }

 private:
  std::vector<double> values_;
};

/// Sample means ybar ~ N(theta, 1/n), in replication order.
inline std::vector<double> draw_ybar(const SimConfig& cfg) {
  const double rn = cfg.point.sqrt_n();
  const double theta = cfg.point.theta;
  std::vector<double> out(static_cast<std::size_t>(cfg.replications));
  for (std::int64_t start = 0; start < cfg.replications; start += kSimBatch) {
    const CounterStream stream(cfg.seed, static_cast<std::uint64_t>(start / kSimBatch));
    const std::int64_t stop = std::min(cfg.replications, start + kSimBatch);
    for (std::int64_t i = start; i < stop; ++i)
      out[static_cast<std::size_t>(i)] = theta + stream.normal(static_cast<std::uint64_t>(i - start)) / rn;
  }
  return out;
}

/// sqrt(n)(estimate - theta) for each replication, in replication order.
inline std::vector<double> simulate_raw(EstimatorKind kind, const SimConfig& cfg) {
  std::vector<double> ybar = draw_ybar(cfg);
  const double rn = cfg.point.sqrt_n();
  const double theta = cfg.point.theta;
  for (double& y : ybar) y = rn * (estimate(kind, y, cfg.tuning) - theta);
  return ybar;
}

inline EmpiricalCdf simulate_estimates(EstimatorKind kind, const SimConfig& cfg) {
  return EmpiricalCdf(simulate_raw(kind, cfg));
}

/// Fraction of draws sitting exactly on the atom location -sqrt(n) theta.
inline double atom_fraction(const EmpiricalCdf& emp, const ModelPoint& point) {
  return static_cast<double>(emp.count_equal(-(point.sqrt_n() * point.theta))) / static_cast<double>(emp.count());
}

/// Sup distance between the empirical cdf and a mixture cdf. Both one-sided
/// limits are compared at each distinct sample value.
inline double ks_distance(const EmpiricalCdf& emp, const MixtureDistribution& dist) {
  const auto& v = emp.values();
  const double N = static_cast<double>(v.size());
  double d = 0.0;
  std::size_t i = 0;
  while (i < v.size()) {
    std::size_t j = i + 1;
    while (j < v.size() && v[j] == v[i]) ++j;
    d = std::max(d, std::abs(dist.cdf(v[i]) - static_cast<double>(j) / N));
    d = std::max(d, std::abs(dist.cdf_left(v[i]) - static_cast<double>(i) / N));
    i = j;
  }
  return d;
}

/// Empirical quantiles at p = 0.01, 0.02, ..., 1.00 as CSV, preceded by a
/// `#`-prefixed header line (typically a JSON echo of the run configuration).
inline void write_quantile_csv(std::ostream& os, const EmpiricalCdf& emp, const std::string& header) {
  if (!header.empty()) os << "# " << header << '\n';
  os << "p,quantile\n";
  for (int k = 1; k <= 100; ++k) {
    const double p = k / 100.0;
    os << format_real(p) << ',' << format_real(emp.quantile(p)) << '\n';
  }
}

/// P(|X| > K) for X with law `dist`.
inline double exceedance_probability(const MixtureDistribution& dist, double K) {
  return std::max(0.0, 1.0 - dist.cdf(K)) + dist.cdf_left(-K);
}

/// P_{n,theta}(c |estimate - theta| > M).
inline double scaled_exceedance(EstimatorKind kind, const ModelPoint& point, const TuningPlan& tuning, double c,
                                double M) {
  if (!(c > 0.0)) throw std::invalid_argument("scaled_exceedance: scale must be positive");
  return exceedance_probability(finite_sample_dist(kind, point, tuning), M * point.sqrt_n() / c);
}

/// Upper bound Pr(|Z| > M/2) + Phi(-M/2 + 1) on the uniform exceedance probability.
inline double uniform_rate_bound(double M) { return 2.0 * Phi(-M / 2.0) + Phi(-M / 2.0 + 1.0); }

inline double uniform_rate(long long n, double eta) { return std::min(std::sqrt(static_cast<double>(n)), 1.0 / eta); }

/// theta-grid for the uniform experiments at one n.
using ThetaGridRule = std::function<std::vector<double>(long long n, double eta, double a_n, double M)>;

/// Adversarial points {0, +-eta, +-eta(1 +- 0.01), +-M/(2 a_n)} plus `regular`
/// evenly spaced points on [-span, span], span = 3 (eta + M / a_n).
inline ThetaGridRule adversarial_grid(std::size_t regular = 801) {
  return [regular](long long, double eta, double a_n, double M) {
    std::vector<double> g{0.0};
    for (double s : {-1.0, 1.0}) {
      g.push_back(s * eta);
      g.push_back(s * eta * 1.01);
      g.push_back(s * eta * 0.99);
      g.push_back(s * M / (2.0 * a_n));
    }
    const double span = 3.0 * (eta + M / a_n);
    for (std::size_t i = 0; i < regular; ++i)
      g.push_back(-span + 2.0 * span * static_cast<double>(i) / static_cast<double>(regular - 1));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
  };
}

/// Sup over the theta-grid of P_{n,theta}(a_n |estimate - theta| > M), from closed forms.
inline ExperimentReport uniform_rate_experiment(EstimatorKind kind, const TuningPath& path, double M,
                                                const std::vector<long long>& n_list,
                                                const ThetaGridRule& theta_grid_rule = adversarial_grid(),
                                                double scad_a = kDefaultScadA) {
  if (!(M > 2.0)) throw std::invalid_argument("uniform_rate_experiment: requires M > 2");
  ExperimentReport rep{{"n", "eta", "a_n", "sup_prob", "bound", "witness_theta"}, {}};
  const double bound = uniform_rate_bound(M);
  for (long long n : n_list) {
    const double eta = path.eta(n);
    const double a_n = uniform_rate(n, eta);
    const TuningPlan tuning(eta, scad_a);
    double sup = 0.0;
    double witness = 0.0;
    for (double theta : theta_grid_rule(n, eta, a_n, M)) {
      const double p = scaled_exceedance(kind, ModelPoint(n, theta), tuning, a_n, M);
      if (p > sup) {
        sup = p;
        witness = theta;
      }
    }
    rep.add_row({static_cast<double>(n), eta, a_n, sup, bound, witness});
  }
  return rep;
}

}  // namespace shrinkdist
