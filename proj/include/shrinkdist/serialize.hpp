#pragma once

#include <string>

#include "json.hpp"
#include "shrinkdist/ext_real.hpp"
#include "shrinkdist/limits.hpp"
#include "shrinkdist/mixture.hpp"

namespace shrinkdist {

using json = nlohmann::ordered_json;

/// Finite reals as numbers, infinities as "+inf"/"-inf".
inline json ext_to_json(const ExtReal& x) {
  if (x.is_pos_inf()) return "+inf";
  if (x.is_neg_inf()) return "-inf";
  return x.value();
}

inline ExtReal ext_from_json(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "+inf" || s == "inf") return ExtReal::pos_inf();
    if (s == "-inf") return ExtReal::neg_inf();
    throw std::invalid_argument("expected a number or \"+inf\"/\"-inf\", got \"" + s + "\"");
  }
  if (!j.is_number()) throw std::invalid_argument("expected a number or \"+inf\"/\"-inf\"");
  return ExtReal(j.get<double>());
}

inline json to_json(const MixtureDistribution& d) {
  json atoms = json::array();
  for (const auto& a : d.atoms()) atoms.push_back({{"loc", ext_to_json(a.location)}, {"weight", a.weight}});
  json pieces = json::array();
  for (const auto& p : d.pieces())
    pieces.push_back({{"coeff", p.coeff},
                      {"slope", p.slope},
                      {"shift", p.shift},
                      {"lower", ext_to_json(p.lower)},
                      {"upper", ext_to_json(p.upper)}});
  return {{"atoms", atoms}, {"pieces", pieces}};
}

inline MixtureDistribution mixture_from_json(const json& j) {
  std::vector<Atom> atoms;
  for (const auto& a : j.at("atoms")) atoms.push_back(Atom{ext_from_json(a.at("loc")), a.at("weight").get<double>()});
  std::vector<GaussPiece> pieces;
  for (const auto& p : j.at("pieces"))
    pieces.push_back(GaussPiece{p.at("coeff").get<double>(), p.at("slope").get<double>(), p.at("shift").get<double>(),
                                ext_from_json(p.at("lower")), ext_from_json(p.at("upper"))});
  return MixtureDistribution(std::move(atoms), std::move(pieces));
}

/// Same layout as a mixture plus a "mode" field.
inline json to_json(const LimitLaw& law) {
  json j = to_json(law.dist);
  j["mode"] = std::string(to_string(law.mode));
  return j;
}

inline LimitLaw limit_from_json(const json& j) {
  return LimitLaw{mixture_from_json(j), parse_mode(j.at("mode").get<std::string>())};
}

}  // namespace shrinkdist
