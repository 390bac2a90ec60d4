#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "shrinkdist/ext_real.hpp"
#include "shrinkdist/normal.hpp"

namespace shrinkdist {

inline constexpr double kMassTolerance = 1e-10;

/// Point mass; the location may be +-infinity for limit laws whose mass escapes.
struct Atom {
  ExtReal location;
  double weight = 0.0;
};

/// Density x -> coeff * phi(slope * x + shift) on the half-open interval (lower, upper].
struct GaussPiece {
  double coeff = 1.0;
  double slope = 1.0;
  double shift = 0.0;
  ExtReal lower = ExtReal::neg_inf();
  ExtReal upper = ExtReal::pos_inf();

  bool covers(double x) const { return lower < ExtReal(x) && ExtReal(x) <= upper; }

  double density(double x) const { return covers(x) ? coeff * phi(slope * x + shift) : 0.0; }

  // Image of x under z = slope * x + shift, extended to the infinities.
  double to_z(const ExtReal& x) const {
    if (x.is_finite()) return slope * x.value() + shift;
    return (x.sign() * (slope > 0 ? 1.0 : -1.0)) * std::numeric_limits<double>::infinity();
  }

  // z-range of the sub-interval (lower, min(x, upper)], ordered ascending.
  std::pair<double, double> z_range(const ExtReal& x) const {
    const ExtReal top = std::min(x, upper, [](const ExtReal& a, const ExtReal& b) { return a < b; });
    double za = to_z(lower);
    double zb = to_z(top);
    if (za > zb) std::swap(za, zb);
    return {za, zb};
  }

  /// Integral of the density over (lower, min(x, upper)].
  double mass_below(const ExtReal& x) const {
    if (!(lower < x)) return 0.0;
    const auto [za, zb] = z_range(x);
    return coeff / std::abs(slope) * Phi_diff(za, zb);
  }

  double mass() const { return mass_below(upper); }

  /// Integral of x^k times the density over the whole piece, k in {0, 1, 2}.
  double moment(int k) const {
    const auto [za, zb] = z_range(upper);
    auto phi_ext = [](double z) { return std::isfinite(z) ? phi(z) : 0.0; };
    auto zphi_ext = [&](double z) { return std::isfinite(z) ? z * phi(z) : 0.0; };
    const double m0 = Phi_diff(za, zb);
    const double m1 = phi_ext(za) - phi_ext(zb);
    const double m2 = m0 + zphi_ext(za) - zphi_ext(zb);
    const double scale = coeff / std::abs(slope);
    switch (k) {
      case 0: return scale * m0;
      case 1: return scale * (m1 - shift * m0) / slope;
      case 2: return scale * (m2 - 2.0 * shift * m1 + shift * shift * m0) / (slope * slope);
      default: throw std::invalid_argument("GaussPiece::moment: k must be 0, 1 or 2");
    }
  }

  /// Piece describing X / s when this piece describes X (s > 0).
  GaussPiece rescaled(double s) const {
    return GaussPiece{coeff * s, slope * s, shift, (1.0 / s) * lower, (1.0 / s) * upper};
  }
};

/// Atoms plus Gaussian-type density pieces; the common form of every
/// finite-sample and limiting law in this library.
class MixtureDistribution {
 public:
  MixtureDistribution() = default;

  MixtureDistribution(std::vector<Atom> atoms, std::vector<GaussPiece> pieces)
      : atoms_(std::move(atoms)), pieces_(std::move(pieces)) {
    validate();
  }

  const std::vector<Atom>& atoms() const { return atoms_; }
  const std::vector<GaussPiece>& pieces() const { return pieces_; }

  double atom_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_) m += a.weight;
    return m;
  }

  double piece_mass() const {
    double m = 0.0;
    for (const auto& p : pieces_) m += p.mass();
    return m;
  }

  double total_mass() const { return atom_mass() + piece_mass(); }

  /// Weight sitting at +-infinity.
  double escaped_mass() const {
    double m = 0.0;
    for (const auto& a : atoms_)
      if (a.location.is_infinite()) m += a.weight;
    return m;
  }

  /// Right-continuous cdf on the real line. Mass at -infinity is counted for
  /// every x, mass at +infinity never.
  double cdf(double x) const {
    double c = 0.0;
    for (const auto& a : atoms_)
      if (a.location <= ExtReal(x)) c += a.weight;
    for (const auto& p : pieces_) c += p.mass_below(x);
    return c;
  }

  /// Left limit of the cdf at x.
  double cdf_left(double x) const {
    double c = 0.0;
    for (const auto& a : atoms_)
      if (a.location < ExtReal(x)) c += a.weight;
    for (const auto& p : pieces_) c += p.mass_below(x);
    return c;
  }

  /// Density of the absolutely continuous part.
  double density_ac(double x) const {
    double d = 0.0;
    for (const auto& p : pieces_) d += p.density(x);
    return d;
  }

  /// E[X^k] for k in {0, 1, 2}; undefined when mass sits at infinity.
  double moment(int k) const {
    double m = 0.0;
    for (const auto& a : atoms_) {
      if (a.location.is_infinite()) {
        if (a.weight > 0.0) throw std::domain_error("moment: distribution has mass at infinity");
        continue;
      }
      m += a.weight * std::pow(a.location.value(), k);
    }
    for (const auto& p : pieces_) m += p.moment(k);
    return m;
  }

  /// Law of X / s.
  MixtureDistribution rescaled(double s) const {
    if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("rescaled: scale must be positive and finite");
    std::vector<Atom> atoms;
    atoms.reserve(atoms_.size());
    for (const auto& a : atoms_) atoms.push_back(Atom{(1.0 / s) * a.location, a.weight});
    std::vector<GaussPiece> pieces;
    pieces.reserve(pieces_.size());
    for (const auto& p : pieces_) pieces.push_back(p.rescaled(s));
    return MixtureDistribution(std::move(atoms), std::move(pieces));
  }

  /// Finite atom locations and finite piece endpoints, sorted and deduplicated.
  std::vector<double> breakpoints() const {
    std::vector<double> out;
    for (const auto& a : atoms_)
      if (a.location.is_finite()) out.push_back(a.location.value());
    for (const auto& p : pieces_) {
      if (p.lower.is_finite()) out.push_back(p.lower.value());
      if (p.upper.is_finite()) out.push_back(p.upper.value());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool has_atom_at(double x) const {
    return std::any_of(atoms_.begin(), atoms_.end(), [&](const Atom& a) { return a.location == ExtReal(x); });
  }

 private:
  void validate() const {
    for (std::size_t i = 0; i < atoms_.size(); ++i) {
      if (!(atoms_[i].weight >= 0.0) || atoms_[i].weight > 1.0 + kMassTolerance)
        throw std::invalid_argument("mixture: atom weights must lie in [0,1]");
      for (std::size_t j = 0; j < i; ++j)
        if (atoms_[i].location == atoms_[j].location)
          throw std::invalid_argument("mixture: atom locations must be distinct");
    }
    for (const auto& p : pieces_) {
      if (!(p.coeff >= 0.0) || !std::isfinite(p.coeff)) throw std::invalid_argument("mixture: piece coefficient must be >= 0");
      if (p.slope == 0.0 || !std::isfinite(p.slope) || !std::isfinite(p.shift))
        throw std::invalid_argument("mixture: piece slope must be nonzero and finite");
      if (!(p.lower < p.upper)) throw std::invalid_argument("mixture: piece requires lower < upper");
    }
    const double total = total_mass();
    if (std::abs(total - 1.0) > kMassTolerance)
      throw std::invalid_argument("mixture: total mass " + std::to_string(total) + " differs from 1");
  }

  std::vector<Atom> atoms_;
  std::vector<GaussPiece> pieces_;
};

}  // namespace shrinkdist
