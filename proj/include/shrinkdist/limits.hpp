#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "shrinkdist/estimators.hpp"
#include "shrinkdist/finite_dist.hpp"
#include "shrinkdist/mixture.hpp"
#include "shrinkdist/report.hpp"
#include "shrinkdist/selection.hpp"

namespace shrinkdist {

enum class ConvergenceMode { Weak, TotalVariation, MassEscape };

inline std::string_view to_string(ConvergenceMode m) {
  switch (m) {
    case ConvergenceMode::Weak: return "weak";
    case ConvergenceMode::TotalVariation: return "total-variation";
    case ConvergenceMode::MassEscape: return "mass-escape";
  }
  return "?";
}

inline ConvergenceMode parse_mode(std::string_view s) {
  if (s == "weak") return ConvergenceMode::Weak;
  if (s == "total-variation") return ConvergenceMode::TotalVariation;
  if (s == "mass-escape") return ConvergenceMode::MassEscape;
  throw std::invalid_argument("unknown convergence mode '" + std::string(s) + "'");
}

/// Limit distribution together with the mode in which it is approached. Atoms
/// at +-infinity carry escaped mass.
struct LimitLaw {
  MixtureDistribution dist;
  ConvergenceMode mode = ConvergenceMode::Weak;
};

namespace detail {

inline LimitLaw point_mass(ExtReal at) {
  LimitLaw law{MixtureDistribution({Atom{at, 1.0}}, {}), ConvergenceMode::Weak};
  if (at.is_infinite()) law.mode = ConvergenceMode::MassEscape;
  return law;
}

inline LimitLaw normal_law(double mean = 0.0) {
  return LimitLaw{MixtureDistribution({}, {GaussPiece{1.0, 1.0, -mean}}), ConvergenceMode::TotalVariation};
}

inline LimitLaw atomic_law(std::vector<Atom> atoms) {
  std::erase_if(atoms, [](const Atom& a) { return a.weight == 0.0; });
  return LimitLaw{MixtureDistribution(std::move(atoms), {}), ConvergenceMode::Weak};
}

inline double sign_of(const ExtReal& x) { return static_cast<double>(x.sign()); }

}  // namespace detail

/// Limits of the sqrt(n)-scaled laws under conservative tuning (sqrt(n) eta_n -> e < infinity).
inline LimitLaw conservative_limit(EstimatorKind kind, ExtReal nu, double e, double scad_a = kDefaultScadA) {
  if (!(e >= 0.0) || !std::isfinite(e)) throw RegimeError("conservative_limit requires 0 <= e < infinity");
  require_scad_a(scad_a);
  if (nu.is_infinite() || e == 0.0) {
    if (kind == EstimatorKind::Soft) return detail::normal_law(-detail::sign_of(nu) * e);
    return detail::normal_law();
  }
  return LimitLaw{detail::offset_law(kind, nu.value(), e, scad_a), ConvergenceMode::Weak};
}

/// Limits of the sqrt(n)-scaled laws under consistent tuning (sqrt(n) eta_n -> infinity).
inline LimitLaw consistent_limit(EstimatorKind kind, const RegimeSpec& regime, double scad_a = kDefaultScadA) {
  if (!regime.is_consistent()) throw RegimeError("consistent_limit requires e = infinity");
  require_scad_a(scad_a);
  const double a = scad_a;

  if (kind == EstimatorKind::Soft) return detail::point_mass(-regime.require_nu("soft consistent limit"));

  const ExtReal zeta = regime.require_zeta("consistent limit");
  const ExtReal az = zeta.abs();
  const double s = detail::sign_of(zeta);
  const double boundary = kind == EstimatorKind::Hard ? 1.0 : a;

  if (az < ExtReal(boundary)) return detail::point_mass(-regime.require_nu("consistent limit"));
  if (az > ExtReal(boundary)) return detail::normal_law();

  const ExtReal r = regime.require_r(kind == EstimatorKind::Hard ? "|zeta| = 1" : "|zeta| = a");
  const ExtReal escape_to = ExtReal::signed_inf(-s);

  if (kind == EstimatorKind::Hard) {
    // Phi(r) escapes to -sign(zeta) infinity; the rest is phi restricted to zeta u > r.
    const double w = Phi(r);
    if (r.is_pos_inf()) return detail::point_mass(escape_to);
    if (r.is_neg_inf()) return detail::normal_law();
    const double rv = r.value();
    GaussPiece tail = s > 0 ? GaussPiece{1.0, 1.0, 0.0, ExtReal(rv), ExtReal::pos_inf()}
                            : GaussPiece{1.0, 1.0, 0.0, ExtReal::neg_inf(), ExtReal(-rv)};
    return LimitLaw{MixtureDistribution({Atom{escape_to, w}}, {tail}), ConvergenceMode::MassEscape};
  }

  // SCAD at |zeta| = a is stated for r real or -infinity only.
  if (r.is_pos_inf()) throw RegimeError("SCAD limit at |zeta| = a is defined for r in R or r = -infinity, not +infinity");
  if (r.is_neg_inf()) return detail::normal_law();
  const double rv = r.value();
  const double k = (a - 2.0) / (a - 1.0);
  std::vector<GaussPiece> pieces;
  if (s > 0) {
    pieces.push_back(GaussPiece{k, k, rv / (a - 1.0), ExtReal::neg_inf(), ExtReal(rv)});
    pieces.push_back(GaussPiece{1.0, 1.0, 0.0, ExtReal(rv), ExtReal::pos_inf()});
  } else {
    pieces.push_back(GaussPiece{1.0, 1.0, 0.0, ExtReal::neg_inf(), ExtReal(-rv)});
    pieces.push_back(GaussPiece{k, k, -rv / (a - 1.0), ExtReal(-rv), ExtReal::pos_inf()});
  }
  return LimitLaw{MixtureDistribution({}, std::move(pieces)), ConvergenceMode::TotalVariation};
}

/// Limits of the eta^-1-scaled laws under consistent tuning. Always atomic,
/// with at most two atoms in [-1, 1].
inline LimitLaw rescaled_limit(EstimatorKind kind, const RegimeSpec& regime, double scad_a = kDefaultScadA) {
  if (!regime.is_consistent()) throw RegimeError("rescaled_limit requires e = infinity");
  require_scad_a(scad_a);
  const double a = scad_a;
  const ExtReal zeta = regime.require_zeta("rescaled limit");
  const ExtReal az = zeta.abs();
  const double s = detail::sign_of(zeta);
  auto soft_location = [&] { return az < ExtReal(1.0) ? -zeta.value() : -s; };

  switch (kind) {
    case EstimatorKind::Hard: {
      if (az < ExtReal(1.0)) return detail::point_mass(ExtReal(-zeta.value()));
      if (az > ExtReal(1.0)) return detail::point_mass(ExtReal(0.0));
      const double w = Phi(regime.require_r("|zeta| = 1"));
      return detail::atomic_law({Atom{ExtReal(-s), w}, Atom{ExtReal(0.0), 1.0 - w}});
    }
    case EstimatorKind::Soft:
      return detail::point_mass(ExtReal(soft_location()));
    case EstimatorKind::Scad: {
      if (az <= ExtReal(2.0)) return detail::point_mass(ExtReal(soft_location()));
      if (az < ExtReal(a)) return detail::point_mass(ExtReal(-s * (a - az.value()) / (a - 2.0)));
      return detail::point_mass(ExtReal(0.0));
    }
  }
  throw std::logic_error("rescaled_limit: unreachable");
}

/// Grid of `count` points spread evenly over [lo, hi] minus windows of
/// half-width `margin` around the limit's finite atoms.
inline std::vector<double> probe_grid(const LimitLaw& limit, double lo, double hi, std::size_t count, double margin) {
  if (!(lo < hi) || count == 0) throw std::invalid_argument("probe_grid: need lo < hi and count > 0");
  std::vector<std::pair<double, double>> cut;
  for (const auto& atom : limit.dist.atoms())
    if (atom.location.is_finite()) cut.emplace_back(atom.location.value() - margin, atom.location.value() + margin);
  std::sort(cut.begin(), cut.end());
  std::vector<std::pair<double, double>> keep;
  double cursor = lo;
  for (const auto& [a, b] : cut) {
    if (a > cursor) keep.emplace_back(cursor, std::min(a, hi));
    cursor = std::max(cursor, b);
    if (cursor >= hi) break;
  }
  if (cursor < hi) keep.emplace_back(cursor, hi);
  double total = 0.0;
  for (const auto& [a, b] : keep) total += b - a;
  if (total <= 0.0) throw std::invalid_argument("probe_grid: margins cover the whole range");
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    double offset = (static_cast<double>(i) + 0.5) / static_cast<double>(count) * total;
    for (const auto& [a, b] : keep) {
      if (offset <= b - a) {
        grid.push_back(a + offset);
        break;
      }
      offset -= b - a;
    }
  }
  return grid;
}

inline constexpr double kAtomCollision = 1e-6;

/// Sup over the grid of |F_n(x) - F_limit(x)| for each probed n. Grid points
/// must stay at least 1e-6 away from the limit's finite atoms.
inline ExperimentReport weak_convergence_check(const std::function<MixtureDistribution(long long)>& finite_law_seq,
                                               const LimitLaw& limit, const std::vector<double>& grid,
                                               const std::vector<long long>& n_probe) {
  for (double x : grid)
    for (const auto& atom : limit.dist.atoms())
      if (atom.location.is_finite() && std::abs(atom.location.value() - x) < kAtomCollision)
        throw std::invalid_argument("weak_convergence_check: grid point " + format_real(x) +
                                    " collides with a limit atom (cdf discontinuity)");
  ExperimentReport rep{{"n", "sup_gap"}, {}};
  for (long long n : n_probe) {
    const MixtureDistribution fn = finite_law_seq(n);
    double gap = 0.0;
    for (double x : grid) gap = std::max(gap, std::abs(fn.cdf(x) - limit.dist.cdf(x)));
    rep.add_row({static_cast<double>(n), gap});
  }
  return rep;
}

}  // namespace shrinkdist
