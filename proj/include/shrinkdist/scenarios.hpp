#pragma once

#include <string>
#include <vector>

#include "shrinkdist/estimators.hpp"
#include "shrinkdist/finite_dist.hpp"
#include "shrinkdist/limits.hpp"
#include "shrinkdist/selection.hpp"

namespace shrinkdist {

enum class Scaling { SqrtN, InvEta };

inline std::string_view to_string(Scaling s) { return s == Scaling::SqrtN ? "sqrt_n" : "inv_eta"; }

inline Scaling parse_scaling(std::string_view s) {
  if (s == "sqrt_n") return Scaling::SqrtN;
  if (s == "inv_eta") return Scaling::InvEta;
  throw std::invalid_argument("unknown scaling '" + std::string(s) + "' (expected sqrt_n or inv_eta)");
}

/// A moving-parameter sequence (path, theta rule) together with the scaling
/// under which its finite-sample laws are compared to the limit.
struct LimitScenario {
  std::string name;
  EstimatorKind kind = EstimatorKind::Hard;
  TuningPath path{1.0, 0.5};
  ThetaRule rule;
  Scaling scaling = Scaling::SqrtN;
  double scad_a = kDefaultScadA;

  RegimeSpec regime() const { return rule.regime(path); }

  LimitLaw limit() const {
    const RegimeSpec reg = regime();
    if (scaling == Scaling::InvEta) return rescaled_limit(kind, reg, scad_a);
    if (reg.is_consistent()) return consistent_limit(kind, reg, scad_a);
    return conservative_limit(kind, reg.require_nu("conservative limit"), reg.e().value(), scad_a);
  }

  MixtureDistribution finite(long long n) const {
    const ModelPoint point(n, rule.theta_at(n, path));
    const TuningPlan tuning = path.plan(n, scad_a);
    return scaling == Scaling::InvEta ? rescaled_dist(kind, point, tuning) : finite_sample_dist(kind, point, tuning);
  }
};

/// Probe grid used for the catalog: 50 points over [-5, 5] (sqrt_n) or
/// [-2, 2] (inv_eta), kept 0.25 (resp. 0.1) away from finite limit atoms.
inline std::vector<double> scenario_grid(const LimitScenario& sc, const LimitLaw& limit, std::size_t count = 50) {
  if (sc.scaling == Scaling::InvEta) return probe_grid(limit, -2.0, 2.0, count, 0.1);
  return probe_grid(limit, -5.0, 5.0, count, 0.25);
}

inline ExperimentReport run_scenario(const LimitScenario& sc, const std::vector<long long>& n_probe,
                                     std::size_t grid_count = 50) {
  const LimitLaw limit = sc.limit();
  return weak_convergence_check([&](long long n) { return sc.finite(n); }, limit, scenario_grid(sc, limit, grid_count),
                                n_probe);
}

/// Every limit regime of the three estimators, instantiated with
/// eta_n = n^(-1/2) (conservative, e = 1) or eta_n = n^(-1/4) (consistent).
inline std::vector<LimitScenario> limit_scenarios() {
  const TuningPath cons(1.0, 0.5);
  const TuningPath cnst(1.0, 0.25);
  const double a = kDefaultScadA;
  using K = EstimatorKind;
  return {
      {"hard-conservative", K::Hard, cons, ThetaRule::local(1.0, 1.0), Scaling::SqrtN, a},
      {"soft-conservative", K::Soft, cons, ThetaRule::local(1.0, 1.0), Scaling::SqrtN, a},
      {"scad-conservative", K::Scad, cons, ThetaRule::local(1.0, 1.0), Scaling::SqrtN, a},
      {"hard-consistent-local", K::Hard, cnst, ThetaRule::local(1.0, 1.0), Scaling::SqrtN, a},
      {"hard-consistent-boundary", K::Hard, cnst, ThetaRule::at_boundary(1.0, 0.5), Scaling::SqrtN, a},
      {"hard-consistent-beyond", K::Hard, cnst, ThetaRule::relative(2.0), Scaling::SqrtN, a},
      {"soft-consistent-local", K::Soft, cnst, ThetaRule::local(2.0, 1.0), Scaling::SqrtN, a},
      {"scad-consistent-local", K::Scad, cnst, ThetaRule::local(1.0, 1.0), Scaling::SqrtN, a},
      {"scad-consistent-boundary", K::Scad, cnst, ThetaRule::at_boundary(a, 0.5), Scaling::SqrtN, a},
      {"scad-consistent-beyond", K::Scad, cnst, ThetaRule::relative(5.0), Scaling::SqrtN, a},
      {"hard-rescaled-inside", K::Hard, cnst, ThetaRule::relative(0.5), Scaling::InvEta, a},
      {"hard-rescaled-boundary", K::Hard, cnst, ThetaRule::at_boundary(1.0, 0.5), Scaling::InvEta, a},
      {"hard-rescaled-beyond", K::Hard, cnst, ThetaRule::relative(2.0), Scaling::InvEta, a},
      {"soft-rescaled", K::Soft, cnst, ThetaRule::relative(0.5), Scaling::InvEta, a},
      {"scad-rescaled-inner", K::Scad, cnst, ThetaRule::relative(1.5), Scaling::InvEta, a},
      {"scad-rescaled-middle", K::Scad, cnst, ThetaRule::relative(3.0), Scaling::InvEta, a},
      {"scad-rescaled-outer", K::Scad, cnst, ThetaRule::relative(5.0), Scaling::InvEta, a},
  };
}

inline LimitScenario find_scenario(const std::string& name) {
  for (auto& sc : limit_scenarios())
    if (sc.name == name) return sc;
  throw std::invalid_argument("unknown limit scenario '" + name + "'");
}

}  // namespace shrinkdist
