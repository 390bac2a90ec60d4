#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "shrinkdist/estimators.hpp"
#include "shrinkdist/ext_real.hpp"
#include "shrinkdist/finite_dist.hpp"
#include "shrinkdist/normal.hpp"
#include "shrinkdist/report.hpp"

namespace shrinkdist {

/// Raised when a moving-parameter regime violates its side conditions or lacks
/// a parameter the applicable limit theorem needs.
class RegimeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Limits describing a moving-parameter regime:
///   e    = lim sqrt(n) eta_n
///   nu   = lim sqrt(n) theta_n
///   zeta = lim theta_n / eta_n           (consistent tuning only)
///   r    = boundary offset, lim sqrt(n)(eta_n - zeta theta_n) when |zeta| = 1,
///          or lim sqrt(n)(a eta_n - sign(zeta) theta_n) when |zeta| = a (SCAD)
class RegimeSpec {
 public:
  static RegimeSpec conservative(double e, ExtReal nu) {
    if (!(e >= 0.0) || !std::isfinite(e)) throw RegimeError("conservative regime requires 0 <= e < infinity");
    RegimeSpec s;
    s.e_ = ExtReal(e);
    s.nu_ = nu;
    return s;
  }

  /// For zeta != 0, nu is implied (sign(zeta) * infinity); passing a different
  /// value is rejected.
  static RegimeSpec consistent(ExtReal zeta, std::optional<ExtReal> nu = std::nullopt,
                               std::optional<ExtReal> r = std::nullopt) {
    RegimeSpec s;
    s.e_ = ExtReal::pos_inf();
    s.zeta_ = zeta;
    if (zeta.sign() != 0) {
      const ExtReal implied = ExtReal::signed_inf(zeta.sign());
      if (nu && !(*nu == implied))
        throw RegimeError("consistent regime with zeta != 0 forces nu = sign(zeta)*infinity");
      s.nu_ = implied;
    } else {
      s.nu_ = nu;
    }
    s.r_ = r;
    return s;
  }

  const ExtReal& e() const { return e_; }
  bool is_consistent() const { return e_.is_pos_inf(); }
  const std::optional<ExtReal>& nu() const { return nu_; }
  const std::optional<ExtReal>& zeta() const { return zeta_; }
  const std::optional<ExtReal>& r() const { return r_; }

  ExtReal require_nu(const char* what) const {
    if (!nu_) throw RegimeError(std::string("regime underdetermined: ") + what + " needs nu");
    return *nu_;
  }
  ExtReal require_zeta(const char* what) const {
    if (!zeta_) throw RegimeError(std::string("regime underdetermined: ") + what + " needs zeta");
    return *zeta_;
  }
  ExtReal require_r(const char* what) const {
    if (!r_) throw RegimeError(std::string("regime underdetermined: ") + what + " needs the boundary offset r");
    return *r_;
  }

 private:
  RegimeSpec() = default;

  ExtReal e_ = ExtReal(0.0);
  std::optional<ExtReal> nu_;
  std::optional<ExtReal> zeta_;
  std::optional<ExtReal> r_;
};

/// Canonical tuning family eta_n = C n^(-gamma), 0 < gamma <= 1/2.
/// gamma = 1/2 is conservative (e = C); gamma < 1/2 is consistent.
class TuningPath {
 public:
  TuningPath(double C, double gamma) : C_(C), gamma_(gamma) {
    if (!(C > 0.0) || !std::isfinite(C)) throw std::invalid_argument("TuningPath: C must be positive");
    if (!(gamma > 0.0 && gamma <= 0.5)) throw std::invalid_argument("TuningPath: gamma must lie in (0, 1/2]");
  }

  double C() const { return C_; }
  double gamma() const { return gamma_; }
  double eta(long long n) const { return C_ * std::pow(static_cast<double>(n), -gamma_); }
  bool consistent() const { return gamma_ < 0.5; }
  ExtReal e() const { return consistent() ? ExtReal::pos_inf() : ExtReal(C_); }
  TuningPlan plan(long long n, double scad_a = kDefaultScadA) const { return TuningPlan(eta(n), scad_a); }

 private:
  double C_;
  double gamma_;
};

/// Sequence theta_n chosen so that a particular regime is reached:
///   local:    theta_n = (nu + kappa n^(-1/4)) / sqrt(n)
///   relative: theta_n = zeta eta_n
///   boundary: theta_n = s (b eta_n - r / sqrt(n)), zeta = s b with s = +-1, b > 0
///   fixed:    theta_n = theta
struct ThetaRule {
  enum class Kind { Local, Relative, Boundary, Fixed };
  Kind kind = Kind::Fixed;
  double nu = 0.0;
  double kappa = 0.0;
  double zeta = 0.0;
  double boundary = 1.0;
  double r = 0.0;
  double theta = 0.0;

  static ThetaRule local(double nu, double kappa = 0.0) {
    ThetaRule t;
    t.kind = Kind::Local;
    t.nu = nu;
    t.kappa = kappa;
    return t;
  }
  static ThetaRule relative(double zeta) {
    ThetaRule t;
    t.kind = Kind::Relative;
    t.zeta = zeta;
    return t;
  }
  static ThetaRule at_boundary(double zeta, double r) {
    if (zeta == 0.0) throw std::invalid_argument("ThetaRule: boundary rule needs zeta != 0");
    ThetaRule t;
    t.kind = Kind::Boundary;
    t.zeta = zeta;
    t.boundary = std::abs(zeta);
    t.r = r;
    return t;
  }
  static ThetaRule fixed(double theta) {
    ThetaRule t;
    t.kind = Kind::Fixed;
    t.theta = theta;
    return t;
  }

  double theta_at(long long n, const TuningPath& path) const {
    const double rn = std::sqrt(static_cast<double>(n));
    switch (kind) {
      case Kind::Local: return (nu + kappa * std::pow(static_cast<double>(n), -0.25)) / rn;
      case Kind::Relative: return zeta * path.eta(n);
      case Kind::Boundary: return sign(zeta) * (boundary * path.eta(n) - r / rn);
      case Kind::Fixed: return theta;
    }
    return 0.0;
  }

  /// The regime this rule reaches along the given tuning path.
  RegimeSpec regime(const TuningPath& path) const {
    if (!path.consistent()) {
      const double e = path.C();
      switch (kind) {
        case Kind::Local: return RegimeSpec::conservative(e, ExtReal(nu));
        case Kind::Relative: return RegimeSpec::conservative(e, ExtReal(zeta * e));
        case Kind::Boundary: return RegimeSpec::conservative(e, ExtReal(sign(zeta) * (boundary * e - r)));
        case Kind::Fixed:
          return RegimeSpec::conservative(e, theta == 0.0 ? ExtReal(0.0) : ExtReal::signed_inf(theta));
      }
    }
    switch (kind) {
      case Kind::Local: return RegimeSpec::consistent(ExtReal(0.0), ExtReal(nu));
      case Kind::Relative:
        // theta_n = zeta eta_n puts both boundary offsets at exactly zero.
        return RegimeSpec::consistent(ExtReal(zeta), zeta == 0.0 ? std::optional<ExtReal>(ExtReal(0.0)) : std::nullopt,
                                      ExtReal(0.0));
      case Kind::Boundary: return RegimeSpec::consistent(ExtReal(zeta), std::nullopt, ExtReal(r));
      case Kind::Fixed:
        if (theta == 0.0) return RegimeSpec::consistent(ExtReal(0.0), ExtReal(0.0));
        return RegimeSpec::consistent(ExtReal::signed_inf(theta));
    }
    throw std::logic_error("ThetaRule: unreachable");
  }
};

/// P(estimate = 0) at a model point; identical for all estimator kinds.
inline double selection_probability(const ModelPoint& point, const TuningPlan& tuning) {
  return atom_weight(point, tuning);
}

/// Limit of P(estimate = 0) along a regime.
inline double limit_selection_probability(const RegimeSpec& regime) {
  if (!regime.is_consistent()) {
    const ExtReal nu = regime.require_nu("conservative selection limit");
    if (nu.is_infinite()) return 0.0;
    const double e = regime.e().value();
    return Phi_diff(-nu.value() - e, -nu.value() + e);
  }
  const ExtReal az = regime.require_zeta("consistent selection limit").abs();
  if (az < ExtReal(1.0)) return 1.0;
  if (az > ExtReal(1.0)) return 0.0;
  return Phi(regime.require_r("|zeta| = 1"));
}

/// Exact selection probability along (path, rule) against its limit.
inline ExperimentReport selection_convergence_table(const TuningPath& path, const ThetaRule& rule,
                                                    const std::vector<long long>& n_list) {
  for (std::size_t i = 1; i < n_list.size(); ++i)
    if (n_list[i] <= n_list[i - 1]) throw std::invalid_argument("selection_convergence_table: n_list must increase");
  const double limit = limit_selection_probability(rule.regime(path));
  ExperimentReport rep{{"n", "theta", "eta", "prob", "limit", "gap"}, {}};
  for (long long n : n_list) {
    const double theta = rule.theta_at(n, path);
    const double eta = path.eta(n);
    const double prob = selection_probability(ModelPoint(n, theta), TuningPlan(eta));
    rep.add_row({static_cast<double>(n), theta, eta, prob, limit, std::abs(prob - limit)});
  }
  return rep;
}

}  // namespace shrinkdist
