#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "shrinkdist/estimators.hpp"
#include "shrinkdist/finite_dist.hpp"
#include "shrinkdist/limits.hpp"
#include "shrinkdist/montecarlo.hpp"
#include "shrinkdist/normal.hpp"
#include "shrinkdist/report.hpp"
#include "shrinkdist/rng.hpp"
#include "shrinkdist/selection.hpp"

namespace shrinkdist {

/// Pair of parameters theta(+-delta) = -(t +- delta) / sqrt(n) whose estimands
/// F_{n,theta}(t) straddle the atom while the experiments merge as delta -> 0.
struct TwoPointProblem {
  long long n = 1;
  double t = 0.0;
  double delta = 0.1;
  TuningPlan tuning{1.0};
  EstimatorKind kind = EstimatorKind::Hard;

  TwoPointProblem(long long n_, double t_, double delta_, TuningPlan tuning_, EstimatorKind kind_)
      : n(n_), t(t_), delta(delta_), tuning(tuning_), kind(kind_) {
    if (n < 1) throw std::invalid_argument("TwoPointProblem: n must be >= 1");
    if (!std::isfinite(t)) throw std::invalid_argument("TwoPointProblem: t must be finite");
    if (!(delta > 0.0) || !std::isfinite(delta)) throw std::invalid_argument("TwoPointProblem: delta must be positive");
  }

  double sqrt_n() const { return std::sqrt(static_cast<double>(n)); }
  double theta_at(double d) const { return -(t + d) / sqrt_n(); }
  double theta_plus() const { return theta_at(delta); }
  double theta_minus() const { return theta_at(-delta); }

  /// Throws unless both points lie inside |theta| < c / sqrt(n).
  void check_radius(double c) const {
    if (!(delta < c - std::abs(t))) throw std::invalid_argument("TwoPointProblem: requires delta < c - |t|");
  }

  TwoPointProblem with_delta(double d) const { return TwoPointProblem(n, t, d, tuning, kind); }
};

struct EstimandGap {
  double gap = 0.0;
  double leading_term = 0.0;
  double remainder = 0.0;
};

/// F_{n,theta(-delta)}(t) - F_{n,theta(delta)}(t) split into the atom term
/// Phi(t - delta + sqrt(n) eta) - Phi(t - delta - sqrt(n) eta) and the rest.
inline EstimandGap estimand_gap(const TwoPointProblem& p) {
  const double lo = finite_sample_dist(p.kind, ModelPoint(p.n, p.theta_minus()), p.tuning).cdf(p.t);
  const double hi = finite_sample_dist(p.kind, ModelPoint(p.n, p.theta_plus()), p.tuning).cdf(p.t);
  const double E = p.sqrt_n() * p.tuning.eta();
  const double u = p.t - p.delta;
  EstimandGap g;
  g.gap = lo - hi;
  g.leading_term = Phi_diff(u - E, u + E);
  g.remainder = g.gap - g.leading_term;
  return g;
}

struct LowerBound {
  double epsilon_range = 0.0;
  double bound = 0.0;
  double witness_delta = 0.0;
};

/// Half-width of the error range (Phi(t + sqrt(n) eta) - Phi(t - sqrt(n) eta)) / 2.
inline double epsilon_range(long long n, double t, const TuningPlan& tuning) {
  const double E = std::sqrt(static_cast<double>(n)) * tuning.eta();
  return 0.5 * Phi_diff(t - E, t + E);
}

inline constexpr double kMinSweepDelta = 1e-9;

/// Two-point bound 1/2 (1 - TV) maximized over delta = problem.delta / 2^k
/// among the deltas whose estimand gap exceeds 2 epsilon. bound = 0 when no
/// delta qualifies.
inline LowerBound minimax_lower_bound(const TwoPointProblem& problem, double epsilon) {
  LowerBound out;
  out.epsilon_range = epsilon_range(problem.n, problem.t, problem.tuning);
  for (double d = problem.delta; d >= kMinSweepDelta; d *= 0.5) {
    const TwoPointProblem p = problem.with_delta(d);
    if (!(epsilon < std::abs(estimand_gap(p).gap) / 2.0)) continue;
    const double b = 0.5 * (1.0 - gaussian_tv(p.n, p.theta_plus(), p.theta_minus()));
    if (b > out.bound) {
      out.bound = b;
      out.witness_delta = d;
    }
  }
  return out;
}

/// Same with epsilon = 0.9 epsilon_range.
inline LowerBound minimax_lower_bound(const TwoPointProblem& problem) {
  return minimax_lower_bound(problem, 0.9 * epsilon_range(problem.n, problem.t, problem.tuning));
}

/// Lower bound for estimating G_{n,theta}(t) over |theta| < c eta, via s = sqrt(n) eta t.
/// The range is (Phi(sqrt(n) eta (t + 1)) - Phi(sqrt(n) eta (t - 1))) / 2.
inline LowerBound rescaled_lower_bound(long long n, double t, const TuningPlan& tuning,
                                       EstimatorKind kind = EstimatorKind::Hard, double delta = 0.1) {
  const double E = std::sqrt(static_cast<double>(n)) * tuning.eta();
  const double s = E * t;
  const double range = 0.5 * Phi_diff(E * (t - 1.0), E * (t + 1.0));
  LowerBound inner = minimax_lower_bound(TwoPointProblem(n, s, delta, tuning, kind), 0.9 * range);
  inner.epsilon_range = range;
  return inner;
}

/// Candidate estimators of F_{n,theta}(t).
struct CdfEstimatorSpec {
  enum class Kind { PretestPlugin, MOutOfNBootstrap, OracleCheat };
  Kind kind = Kind::OracleCheat;
  double cutoff_exponent = 0.25;
  double m_exponent = 0.5;

  static CdfEstimatorSpec pretest(double cutoff_exponent = 0.25) {
    if (!(cutoff_exponent > 0.0 && cutoff_exponent < 0.5))
      throw std::invalid_argument("PretestPlugin: cutoff exponent must lie in (0, 1/2)");
    CdfEstimatorSpec s;
    s.kind = Kind::PretestPlugin;
    s.cutoff_exponent = cutoff_exponent;
    return s;
  }

  /// m = ceil(n^exponent). exponent < 1 gives m -> infinity with m / n -> 0;
  /// exponent = 1 is the full-n plug-in, which is not consistent.
  static CdfEstimatorSpec m_out_of_n(double exponent = 0.5) {
    if (!(exponent > 0.0 && exponent <= 1.0))
      throw std::invalid_argument("MOutOfNBootstrap: m exponent must lie in (0, 1]");
    CdfEstimatorSpec s;
    s.kind = Kind::MOutOfNBootstrap;
    s.m_exponent = exponent;
    return s;
  }

  static CdfEstimatorSpec full_bootstrap() { return m_out_of_n(1.0); }
  static CdfEstimatorSpec oracle() { return CdfEstimatorSpec{}; }

  bool declared_consistent() const {
    return kind == Kind::PretestPlugin || (kind == Kind::MOutOfNBootstrap && m_exponent < 1.0);
  }

  long long m(long long n) const {
    const auto v = static_cast<long long>(std::ceil(std::pow(static_cast<double>(n), m_exponent) - 1e-9));
    return std::clamp(v, 1LL, n);
  }
};

inline std::string_view to_string(CdfEstimatorSpec::Kind k) {
  switch (k) {
    case CdfEstimatorSpec::Kind::PretestPlugin: return "pretest";
    case CdfEstimatorSpec::Kind::MOutOfNBootstrap: return "m-out-of-n";
    case CdfEstimatorSpec::Kind::OracleCheat: return "oracle";
  }
  return "?";
}

/// Estimate of F_{n,theta}(t) from the observed ybar. `theta` is read only by
/// the oracle.
inline double estimate_cdf(const CdfEstimatorSpec& spec, EstimatorKind kind, double ybar, long long n, double t,
                           const TuningPath& path, double theta, double scad_a = kDefaultScadA) {
  const double rn = std::sqrt(static_cast<double>(n));
  const TuningPlan tuning = path.plan(n, scad_a);
  switch (spec.kind) {
    case CdfEstimatorSpec::Kind::OracleCheat:
      return finite_sample_dist(kind, ModelPoint(n, theta), tuning).cdf(t);
    case CdfEstimatorSpec::Kind::PretestPlugin: {
      const bool reject = std::abs(ybar) > std::pow(static_cast<double>(n), -spec.cutoff_exponent);
      const double E = rn * tuning.eta();
      if (!reject) {
        if (path.consistent()) return t >= 0.0 ? 1.0 : 0.0;
        return conservative_limit(kind, ExtReal(0.0), E, scad_a).dist.cdf(t);
      }
      if (kind != EstimatorKind::Soft) return Phi(t);
      if (path.consistent()) return ybar > 0.0 ? 1.0 : 0.0;
      return Phi(t + sign(ybar) * E);
    }
    case CdfEstimatorSpec::Kind::MOutOfNBootstrap: {
      // Parametric bootstrap at scale m, ybar* ~ N(ybar, 1/m), root sqrt(m)(estimate* - estimate_n);
      // evaluated exactly rather than by resampling.
      const long long m = spec.m(n);
      const double theta_n = estimate(kind, ybar, tuning);
      const MixtureDistribution law = finite_sample_dist(kind, ModelPoint(m, ybar), path.plan(m, scad_a));
      return law.cdf(t + std::sqrt(static_cast<double>(m)) * (theta_n - ybar));
    }
  }
  throw std::logic_error("estimate_cdf: unreachable");
}

struct WorstCaseResult {
  ExperimentReport report{{"theta", "err_prob"}, {}};
  double epsilon = 0.0;
  double epsilon_range = 0.0;
  double bound = 0.0;
  double sup = 0.0;
  double witness_theta = 0.0;
};

inline constexpr double kWitnessFractions[] = {0.5, 0.1, 0.02};

/// theta-grid over |theta| < c / sqrt(n): `size` evenly spaced interior points,
/// theta = 0, and theta(+-delta) for delta in {0.5, 0.1, 0.02} (c - |t|).
inline std::vector<double> worst_case_grid(long long n, double t, double c, std::size_t size) {
  if (!(c > std::abs(t))) throw std::invalid_argument("estimator_worst_case: requires c > |t|");
  const double rn = std::sqrt(static_cast<double>(n));
  std::vector<double> g{0.0};
  for (std::size_t i = 0; i < size; ++i)
    g.push_back((-c + 2.0 * c * (static_cast<double>(i) + 0.5) / static_cast<double>(size)) / rn);
  for (double f : kWitnessFractions) {
    const double d = f * (c - std::abs(t));
    g.push_back(-(t + d) / rn);
    g.push_back(-(t - d) / rn);
  }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

namespace detail {

// Shared harness: `truth(theta)` is the estimand, `estimate(ybar, theta)` the
// estimator, `eps` the error threshold.
template <class Truth, class Estimate>
WorstCaseResult run_worst_case(const std::vector<double>& grid, long long n, double eps, std::uint64_t seed,
                               std::int64_t reps, Truth truth, Estimate est) {
  if (reps < 1) throw std::invalid_argument("estimator_worst_case: replications must be >= 1");
  WorstCaseResult res;
  res.epsilon = eps;
  const double rn = std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double theta = grid[i];
    const double target = truth(theta);
    const CounterStream stream(seed, i);
    std::int64_t errors = 0;
    for (std::int64_t r = 0; r < reps; ++r) {
      const double ybar = theta + stream.normal(static_cast<std::uint64_t>(r)) / rn;
      if (std::abs(est(ybar, theta) - target) > eps) ++errors;
    }
    const double p = static_cast<double>(errors) / static_cast<double>(reps);
    res.report.add_row({theta, p});
    if (i == 0 || p > res.sup) {
      res.sup = p;
      res.witness_theta = theta;
    }
  }
  return res;
}

}  // namespace detail

/// Monte Carlo estimate of P_{n,theta}(|Fhat_n(t) - F_{n,theta}(t)| > eps) on a
/// grid over |theta| < c / sqrt(n), eps = epsilon_fraction * epsilon_range.
inline WorstCaseResult estimator_worst_case(const CdfEstimatorSpec& spec, EstimatorKind kind, long long n, double t,
                                            const TuningPath& path, double c, std::size_t theta_grid_size,
                                            std::uint64_t seed, std::int64_t reps, double scad_a = kDefaultScadA,
                                            double epsilon_fraction = 0.9) {
  const TuningPlan tuning = path.plan(n, scad_a);
  const double range = epsilon_range(n, t, tuning);
  const auto grid = worst_case_grid(n, t, c, theta_grid_size);
  WorstCaseResult res = detail::run_worst_case(
      grid, n, epsilon_fraction * range, seed, reps,
      [&](double theta) { return finite_sample_dist(kind, ModelPoint(n, theta), tuning).cdf(t); },
      [&](double ybar, double theta) { return estimate_cdf(spec, kind, ybar, n, t, path, theta, scad_a); });
  res.epsilon_range = range;
  const TwoPointProblem problem(n, t, kWitnessFractions[2] * (c - std::abs(t)), tuning, kind);
  res.bound = minimax_lower_bound(problem, res.epsilon).bound;
  return res;
}

/// The same experiment for G_{n,theta}(t) over |theta| < c eta, with
/// Ghat_n(t) = Fhat_n(sqrt(n) eta t).
inline WorstCaseResult rescaled_worst_case(const CdfEstimatorSpec& spec, EstimatorKind kind, long long n, double t,
                                           const TuningPath& path, double c, std::size_t theta_grid_size,
                                           std::uint64_t seed, std::int64_t reps, double scad_a = kDefaultScadA,
                                           double epsilon_fraction = 0.9) {
  const TuningPlan tuning = path.plan(n, scad_a);
  const double E = std::sqrt(static_cast<double>(n)) * tuning.eta();
  const double s = E * t;
  const double range = 0.5 * Phi_diff(E * (t - 1.0), E * (t + 1.0));
  const auto grid = worst_case_grid(n, s, c * E, theta_grid_size);
  WorstCaseResult res = detail::run_worst_case(
      grid, n, epsilon_fraction * range, seed, reps,
      [&](double theta) { return rescaled_dist(kind, ModelPoint(n, theta), tuning).cdf(t); },
      [&](double ybar, double theta) { return estimate_cdf(spec, kind, ybar, n, s, path, theta, scad_a); });
  res.epsilon_range = range;
  res.bound = rescaled_lower_bound(n, t, tuning, kind, kWitnessFractions[2] * (c * E - std::abs(s))).bound;
  return res;
}

}  // namespace shrinkdist
