#pragma once

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "shrinkdist/serialize.hpp"
#include "shrinkdist/shrinkdist.hpp"

namespace shrinkdist::cli {

namespace fs = std::filesystem;

inline constexpr const char* kVersion = "0.3.0";
inline constexpr std::uint64_t kDefaultSeed = 20080601;

/// Invalid flags, configs or parameters; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Outcome of one command: files written (relative to the output directory)
/// and whether all verdicts passed.
struct CommandResult {
  std::vector<std::string> outputs;
  bool pass = true;
};

// ---- parameter access ------------------------------------------------------

/// Flat parameter set. Values come from flags (numbers, strings) or from
/// key=value config files (strings).
using Params = json;

inline bool has(const Params& p, const std::string& key) { return p.contains(key) && !p.at(key).is_null(); }

inline double parse_double(const std::string& key, const std::string& s) {
  try {
    std::size_t pos = 0;
    const std::string t = s == "+inf" ? "inf" : s;
    const double v = std::stod(t, &pos);
    if (pos != t.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("parameter '" + key + "': expected a number, got '" + s + "'");
  }
}

inline double get_double(const Params& p, const std::string& key) {
  if (!has(p, key)) throw UsageError("missing parameter '" + key + "'");
  const auto& v = p.at(key);
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_double(key, v.get<std::string>());
  throw UsageError("parameter '" + key + "': expected a number");
}

inline double get_double(const Params& p, const std::string& key, double fallback) {
  return has(p, key) ? get_double(p, key) : fallback;
}

inline long long get_int(const Params& p, const std::string& key, long long fallback) {
  if (!has(p, key)) return fallback;
  const double v = get_double(p, key);
  if (v != std::floor(v) || std::abs(v) > 9e18) throw UsageError("parameter '" + key + "': expected an integer");
  return static_cast<long long>(v);
}

inline std::uint64_t get_seed(const Params& p) {
  if (!has(p, "seed")) return kDefaultSeed;
  const auto& v = p.at("seed");
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0) return static_cast<std::uint64_t>(v.get<long long>());
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    try {
      std::size_t pos = 0;
      const unsigned long long u = std::stoull(s, &pos);
      if (pos == s.size() && s.find('-') == std::string::npos) return u;
    } catch (const std::logic_error&) {
    }
  }
  throw UsageError("parameter 'seed': expected an unsigned 64-bit integer");
}

inline std::string get_string(const Params& p, const std::string& key, const std::string& fallback) {
  if (!has(p, key)) return fallback;
  const auto& v = p.at(key);
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline std::vector<long long> get_int_list(const Params& p, const std::string& key, std::vector<long long> fallback) {
  if (!has(p, key)) return fallback;
  std::vector<long long> out;
  const auto& v = p.at(key);
  if (v.is_array()) {
    for (const auto& e : v) out.push_back(static_cast<long long>(e.get<double>()));
    return out;
  }
  std::stringstream ss(get_string(p, key, ""));
  std::string item;
  while (std::getline(ss, item, ',')) {
    const double d = parse_double(key, item);
    if (d != std::floor(d)) throw UsageError("parameter '" + key + "': expected integers");
    out.push_back(static_cast<long long>(d));
  }
  if (out.empty()) throw UsageError("parameter '" + key + "': empty list");
  return out;
}

inline std::optional<ExtReal> get_ext(const Params& p, const std::string& key) {
  if (!has(p, key)) return std::nullopt;
  return ExtReal(get_double(p, key));
}

/// key=value lines ('#' starts a comment) or a JSON object.
inline Params parse_config_text(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    try {
      Params p = json::parse(text);
      if (!p.is_object()) throw UsageError("config: JSON config must be an object");
      return p;
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("config: invalid JSON: ") + e.what());
    }
  }
  Params p = Params::object();
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(ss, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
    p[key] = trim(line.substr(eq + 1));
  }
  return p;
}

inline Params read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

// ---- output helpers ----------------------------------------------------------

inline void write_text(const fs::path& dir, const std::string& name, const std::string& body,
                       CommandResult& result) {
  std::ofstream out(dir / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + (dir / name).string() + "'");
  out << body;
  if (!out) throw std::runtime_error("write failed for '" + (dir / name).string() + "'");
  result.outputs.push_back(name);
}

inline std::string json_text(const json& j) { return j.dump(2) + "\n"; }

inline json real_json(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

struct Verdict {
  json checks = json::array();
  bool pass = true;

  void check(const std::string& name, double value, const std::string& relation, double threshold, bool ok) {
    checks.push_back({{"name", name},
                      {"value", real_json(value)},
                      {"relation", relation},
                      {"threshold", real_json(threshold)},
                      {"pass", ok}});
    pass = pass && ok;
  }

  json to_json(const std::string& experiment) const {
    return {{"experiment", experiment}, {"pass", pass}, {"checks", checks}};
  }
};

inline TuningPlan tuning_from(const Params& p) {
  return TuningPlan(get_double(p, "eta"), get_double(p, "a", kDefaultScadA));
}

inline TuningPath path_from(const Params& p, double C = 1.0, double gamma = 0.25) {
  return TuningPath(get_double(p, "C", C), get_double(p, "gamma", gamma));
}

// ---- figure -----------------------------------------------------------------

inline constexpr int kFigureGrid = 2000;

struct FigureDefaults {
  EstimatorKind kind;
  long long n;
  double theta;
  double eta;
};

inline FigureDefaults figure_defaults(int which) {
  switch (which) {
    case 1: return {EstimatorKind::Hard, 40, 0.16, 0.05};
    case 2: return {EstimatorKind::Soft, 40, 0.16, 0.05};
    case 3: return {EstimatorKind::Scad, 40, 0.16, 0.05};
    default: throw UsageError("figure must be 1, 2 or 3");
  }
}

/// Density samples of the absolutely continuous part: 2000 grid points over
/// [lo, hi] plus both one-sided values at each breakpoint inside the window.
struct DensityTrace {
  std::vector<double> x;
  std::vector<double> density;
};

inline DensityTrace density_trace(const MixtureDistribution& d, double lo, double hi, int count) {
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < count; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    pts.emplace_back(x, d.density_ac(x));
  }
  for (double b : d.breakpoints()) {
    if (b <= lo || b >= hi) continue;
    // Pieces are closed on the right: density_ac(b) is the left limit.
    pts.emplace_back(b, d.density_ac(b));
    double right = 0.0;
    for (const auto& p : d.pieces())
      if (p.lower == ExtReal(b) || (p.lower < ExtReal(b) && ExtReal(b) < p.upper)) right += p.coeff * phi(p.slope * b + p.shift);
    pts.emplace_back(b, right);
  }
  std::stable_sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  DensityTrace t;
  for (const auto& [x, y] : pts) {
    t.x.push_back(x);
    t.density.push_back(y);
  }
  return t;
}

inline std::string figure_svg(const DensityTrace& t, const MixtureDistribution& d, double lo, double hi,
                              const std::string& title) {
  const double W = 640, H = 400, pad = 40;
  double ymax = 0.0;
  for (double y : t.density) ymax = std::max(ymax, y);
  for (const auto& a : d.atoms())
    if (a.location.is_finite()) ymax = std::max(ymax, a.weight);
  ymax = ymax > 0 ? ymax * 1.1 : 1.0;
  auto sx = [&](double x) { return pad + (x - lo) / (hi - lo) * (W - 2 * pad); };
  auto sy = [&](double y) { return H - pad - y / ymax * (H - 2 * pad); };
  std::ostringstream os;
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf);
  };
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n";
  os << "<title>" << title << "</title>\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << num(sx(lo)) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(sx(hi)) << "\" y2=\""
     << num(sy(0)) << "\" stroke=\"black\"/>\n";
  for (int k = static_cast<int>(std::ceil(lo)); k <= static_cast<int>(std::floor(hi)); ++k)
    os << "<text x=\"" << num(sx(k)) << "\" y=\"" << num(H - pad + 16) << "\" font-size=\"11\" text-anchor=\"middle\">"
       << k << "</text>\n";
  os << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < t.x.size(); ++i) os << (i ? " " : "") << num(sx(t.x[i])) << ',' << num(sy(t.density[i]));
  os << "\"/>\n";
  for (const auto& a : d.atoms()) {
    if (!a.location.is_finite() || a.location.value() < lo || a.location.value() > hi) continue;
    const double x = sx(a.location.value());
    os << "<line x1=\"" << num(x) << "\" y1=\"" << num(sy(0)) << "\" x2=\"" << num(x) << "\" y2=\""
       << num(sy(a.weight)) << "\" stroke=\"black\" stroke-dasharray=\"2,3\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

inline CommandResult cmd_figure(const Params& p, const fs::path& out) {
  const int which = static_cast<int>(get_int(p, "which", 1));
  const FigureDefaults def = figure_defaults(which);
  const long long n = get_int(p, "n", def.n);
  const double theta = get_double(p, "theta", def.theta);
  const TuningPlan tuning(get_double(p, "eta", def.eta), get_double(p, "a", kDefaultScadA));
  const MixtureDistribution d = finite_sample_dist(def.kind, ModelPoint(n, theta), tuning);
  const double lo = -5.0, hi = 5.0;
  const DensityTrace t = density_trace(d, lo, hi, kFigureGrid);

  CommandResult res;
  std::ostringstream csv;
  csv << "x,density,is_atom\n";
  for (const auto& a : d.atoms())
    if (a.location.is_finite()) csv << format_real(a.location.value()) << ',' << format_real(a.weight) << ",1\n";
  for (std::size_t i = 0; i < t.x.size(); ++i) csv << format_real(t.x[i]) << ',' << format_real(t.density[i]) << ",0\n";
  const std::string stem = "figure" + std::to_string(which);
  write_text(out, stem + ".csv", csv.str(), res);
  write_text(out, stem + ".svg",
             figure_svg(t, d, lo, hi,
                        std::string(to_string(def.kind)) + " n=" + std::to_string(n) + " theta=" + format_real(theta) +
                            " eta=" + format_real(tuning.eta())),
             res);
  return res;
}

// ---- dist -------------------------------------------------------------------

inline std::string dist_csv(const MixtureDistribution& d, double lo, double hi, long long count) {
  std::ostringstream csv;
  csv << "x,cdf,ac_density\n";
  for (long long i = 0; i < count; ++i) {
    const double x = count == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    csv << format_real(x) << ',' << format_real(d.cdf(x)) << ',' << format_real(d.density_ac(x)) << '\n';
  }
  return csv.str();
}

inline CommandResult cmd_dist(const Params& p, const fs::path& out) {
  CommandResult res;
  if (has(p, "from_json")) {
    std::ifstream in(get_string(p, "from_json", ""));
    if (!in) throw UsageError("cannot read '" + get_string(p, "from_json", "") + "'");
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw UsageError(std::string("invalid distribution JSON: ") + e.what());
    }
    const MixtureDistribution d = mixture_from_json(j.at("distribution"));
    const auto& g = j.at("grid");
    write_text(out, "dist.csv",
               dist_csv(d, g.at("lo").get<double>(), g.at("hi").get<double>(), g.at("count").get<long long>()), res);
    return res;
  }
  const EstimatorKind kind = parse_kind(get_string(p, "kind", "hard"));
  const long long n = get_int(p, "n", 40);
  const double theta = get_double(p, "theta", 0.16);
  const TuningPlan tuning(get_double(p, "eta", 0.05), get_double(p, "a", kDefaultScadA));
  const Scaling scaling = parse_scaling(get_string(p, "scaling", "sqrt_n"));
  const ModelPoint point(n, theta);
  const double s = point.sqrt_n() * tuning.eta();
  const double unit = scaling == Scaling::InvEta ? 1.0 / s : 1.0;
  const double lo = get_double(p, "lo", -5.0 * unit);
  const double hi = get_double(p, "hi", 5.0 * unit);
  const long long count = get_int(p, "count", 201);
  if (!(lo < hi) || count < 2) throw UsageError("grid requires lo < hi and count >= 2");
  const MixtureDistribution d =
      scaling == Scaling::InvEta ? rescaled_dist(kind, point, tuning) : finite_sample_dist(kind, point, tuning);
  write_text(out, "dist.csv", dist_csv(d, lo, hi, count), res);
  json j = {{"kind", std::string(to_string(kind))},
            {"n", n},
            {"theta", theta},
            {"eta", tuning.eta()},
            {"a", tuning.scad_a()},
            {"scaling", std::string(to_string(scaling))},
            {"grid", {{"lo", lo}, {"hi", hi}, {"count", count}}},
            {"distribution", to_json(d)}};
  write_text(out, "dist.json", json_text(j), res);
  return res;
}

// ---- simulate ---------------------------------------------------------------

inline CommandResult cmd_simulate(const Params& p, const fs::path& out) {
  const EstimatorKind kind = parse_kind(get_string(p, "kind", "hard"));
  const ModelPoint point(get_int(p, "n", 40), get_double(p, "theta", 0.16));
  const TuningPlan tuning(get_double(p, "eta", 0.05), get_double(p, "a", kDefaultScadA));
  const auto seed = get_seed(p);
  const SimConfig cfg(seed, get_int(p, "reps", 100000), point, tuning);
  const EmpiricalCdf emp = simulate_estimates(kind, cfg);
  const MixtureDistribution d = finite_sample_dist(kind, point, tuning);

  CommandResult res;
  const json header = {{"kind", std::string(to_string(kind))}, {"n", point.n}, {"theta", point.theta},
                       {"eta", tuning.eta()}, {"a", tuning.scad_a()}, {"seed", seed}, {"reps", cfg.replications}};
  std::ostringstream csv;
  write_quantile_csv(csv, emp, header.dump());
  write_text(out, "simulate.csv", csv.str(), res);

  const double N = static_cast<double>(emp.count());
  const double ks = ks_distance(emp, d);
  const double band = 1.63 / std::sqrt(N) + 0.001;
  const double w = atom_weight(point, tuning);
  const double frac = atom_fraction(emp, point);
  const double sd = std::sqrt(w * (1.0 - w) / N);
  Verdict v;
  v.check("ks_distance", ks, "<=", band, ks <= band);
  v.check("atom_fraction_deviation", std::abs(frac - w), "<=", 4.0 * sd + 1.0 / N, std::abs(frac - w) <= 4.0 * sd + 1.0 / N);
  json summary = v.to_json("simulate");
  summary["atom_fraction"] = frac;
  summary["atom_weight"] = w;
  write_text(out, "simulate.json", json_text(summary), res);
  res.pass = v.pass;
  return res;
}

// ---- experiment ---------------------------------------------------------------

inline constexpr double kNumericalZero = 1e-12;

inline ThetaRule rule_from(const Params& p) {
  const std::string rule = get_string(p, "rule", "local");
  if (rule == "local") return ThetaRule::local(get_double(p, "nu", 0.0), get_double(p, "kappa", 0.0));
  if (rule == "relative") return ThetaRule::relative(get_double(p, "zeta"));
  if (rule == "fixed") return ThetaRule::fixed(get_double(p, "theta"));
  if (rule == "boundary") {
    if (!has(p, "r")) {
      // Surface the regime error: the limit at the boundary needs r.
      const RegimeSpec reg = RegimeSpec::consistent(ExtReal(get_double(p, "zeta")));
      (void)limit_selection_probability(reg);
      (void)consistent_limit(parse_kind(get_string(p, "kind", "hard")), reg, get_double(p, "a", kDefaultScadA));
      throw RegimeError("regime underdetermined: boundary rule needs the boundary offset r");
    }
    return ThetaRule::at_boundary(get_double(p, "zeta"), get_double(p, "r"));
  }
  throw UsageError("unknown theta rule '" + rule + "' (expected local, relative, boundary or fixed)");
}

inline bool shrinks(double first, double last) { return last < first || last <= kNumericalZero; }

inline CommandResult exp_selection(const Params& p, const fs::path& out) {
  const TuningPath path = path_from(p);
  const ThetaRule rule = rule_from(p);
  const auto ns = get_int_list(p, "n_list", {1000, 1000000});
  const ExperimentReport rep = selection_convergence_table(path, rule, ns);
  const double tol = get_double(p, "tolerance", 0.02);
  CommandResult res;
  write_text(out, "selection.csv", rep.to_csv(), res);
  const auto gaps = rep.column("gap");
  Verdict v;
  v.check("final_gap", gaps.back(), "<", tol, gaps.back() < tol);
  v.check("gap_shrinks", gaps.back(), "<", gaps.front(), shrinks(gaps.front(), gaps.back()));
  write_text(out, "verdict.json", json_text(v.to_json("selection")), res);
  res.pass = v.pass;
  return res;
}

inline LimitScenario scenario_from(const Params& p) {
  if (has(p, "scenario")) {
    LimitScenario sc = find_scenario(get_string(p, "scenario", ""));
    if (has(p, "a")) sc.scad_a = get_double(p, "a");
    require_scad_a(sc.scad_a);
    return sc;
  }
  LimitScenario sc;
  sc.name = "custom";
  sc.kind = parse_kind(get_string(p, "kind", "hard"));
  sc.scad_a = get_double(p, "a", kDefaultScadA);
  require_scad_a(sc.scad_a);
  sc.path = path_from(p);
  sc.rule = rule_from(p);
  sc.scaling = parse_scaling(get_string(p, "scaling", "sqrt_n"));
  return sc;
}

inline CommandResult exp_limits(const Params& p, const fs::path& out) {
  const LimitScenario sc = scenario_from(p);
  const auto ns = get_int_list(p, "n_list", {1000, 1000000});
  const auto grid_count = static_cast<std::size_t>(get_int(p, "grid", 50));
  const LimitLaw limit = sc.limit();
  const ExperimentReport rep = run_scenario(sc, ns, grid_count);
  const double tol = get_double(p, "tolerance", 0.02);
  CommandResult res;
  write_text(out, "limits.csv", rep.to_csv(), res);
  write_text(out, "limit.json", json_text(to_json(limit)), res);
  const auto gaps = rep.column("sup_gap");
  Verdict v;
  v.check("final_gap", gaps.back(), "<", tol, gaps.back() < tol);
  v.check("gap_shrinks", gaps.back(), "<", gaps.front(), shrinks(gaps.front(), gaps.back()));
  json verdict = v.to_json("limits");
  verdict["scenario"] = sc.name;
  verdict["mode"] = std::string(to_string(limit.mode));
  write_text(out, "verdict.json", json_text(verdict), res);
  res.pass = v.pass;
  return res;
}

inline CommandResult exp_uniform_rate(const Params& p, const fs::path& out) {
  const EstimatorKind kind = parse_kind(get_string(p, "kind", "hard"));
  const TuningPath path = path_from(p);
  const double M = get_double(p, "M", 6.0);
  const auto ns = get_int_list(p, "n_list", {100, 10000, 1000000});
  const double a = get_double(p, "a", kDefaultScadA);
  require_scad_a(a);
  const ExperimentReport rep = uniform_rate_experiment(kind, path, M, ns, adversarial_grid(), a);
  CommandResult res;
  write_text(out, "uniform_rate.csv", rep.to_csv(), res);
  Verdict v;
  for (const auto& row : rep.rows)
    v.check("sup_prob_n=" + format_real(row[0]), row[3], "<=", row[4], row[3] <= row[4]);
  write_text(out, "verdict.json", json_text(v.to_json("uniform-rate")), res);
  res.pass = v.pass;
  return res;
}

inline CdfEstimatorSpec estimator_from(const Params& p) {
  const std::string name = get_string(p, "estimator", "pretest");
  if (name == "pretest") return CdfEstimatorSpec::pretest(get_double(p, "cutoff_exponent", 0.25));
  if (name == "m-out-of-n") return CdfEstimatorSpec::m_out_of_n(get_double(p, "m_exponent", 0.5));
  if (name == "full-bootstrap") return CdfEstimatorSpec::full_bootstrap();
  if (name == "oracle") return CdfEstimatorSpec::oracle();
  throw UsageError("unknown estimator '" + name + "' (expected pretest, m-out-of-n, full-bootstrap or oracle)");
}

inline CommandResult exp_impossibility(const Params& p, const fs::path& out) {
  const CdfEstimatorSpec spec = estimator_from(p);
  const EstimatorKind kind = parse_kind(get_string(p, "kind", "hard"));
  const TuningPath path = path_from(p);
  const long long n = get_int(p, "n", 10000);
  const double t = get_double(p, "t", 0.0);
  const double c = get_double(p, "c", 2.0);
  const auto grid = static_cast<std::size_t>(get_int(p, "grid", 21));
  const auto seed = get_seed(p);
  const long long reps = get_int(p, "reps", 10000);
  const double a = get_double(p, "a", kDefaultScadA);
  require_scad_a(a);
  const WorstCaseResult r =
      estimator_worst_case(spec, kind, n, t, path, c, grid, seed, reps, a, get_double(p, "epsilon_fraction", 0.9));
  CommandResult res;
  write_text(out, "impossibility.csv", r.report.to_csv(), res);
  json summary = {{"epsilon", r.epsilon}, {"bound", r.bound}, {"sup", r.sup}, {"witness_theta", r.witness_theta}};
  write_text(out, "impossibility.json", json_text(summary), res);
  Verdict v;
  if (spec.kind == CdfEstimatorSpec::Kind::OracleCheat) {
    const double tol = get_double(p, "tolerance", 0.01);
    v.check("oracle_sup", r.sup, "<=", tol, r.sup <= tol);
  } else {
    const double slack = get_double(p, "tolerance", 0.05);
    v.check("sup_vs_bound", r.sup, ">=", r.bound - slack, r.sup >= r.bound - slack);
  }
  write_text(out, "verdict.json", json_text(v.to_json("impossibility")), res);
  res.pass = v.pass;
  return res;
}

inline CommandResult cmd_experiment(const Params& p, const fs::path& out) {
  const std::string name = get_string(p, "name", "");
  if (name == "selection") return exp_selection(p, out);
  if (name == "limits") return exp_limits(p, out);
  if (name == "uniform-rate") return exp_uniform_rate(p, out);
  if (name == "impossibility") return exp_impossibility(p, out);
  throw UsageError("unknown experiment '" + name + "' (expected selection, limits, uniform-rate or impossibility)");
}

// ---- dispatch and manifests -------------------------------------------------

inline CommandResult execute(const std::string& command, const Params& params, const fs::path& out) {
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec || !fs::is_directory(out)) throw std::runtime_error("cannot create output directory '" + out.string() + "'");
  CommandResult res;
  if (command == "figure") res = cmd_figure(params, out);
  else if (command == "dist") res = cmd_dist(params, out);
  else if (command == "simulate") res = cmd_simulate(params, out);
  else if (command == "experiment") res = cmd_experiment(params, out);
  else throw UsageError("unknown command '" + command + "'");

  json manifest = {{"command", command},
                   {"params", params},
                   {"seed", has(params, "seed") ? params.at("seed") : json(nullptr)},
                   {"version", kVersion},
                   {"outputs", res.outputs}};
  manifest["outputs"].push_back("manifest.json");
  std::ofstream m(out / "manifest.json", std::ios::binary);
  if (!m) throw std::runtime_error("cannot write manifest in '" + out.string() + "'");
  m << json_text(manifest);
  res.outputs.push_back("manifest.json");
  return res;
}

/// Re-runs the command recorded in a manifest, writing into `out`.
inline CommandResult replay(const fs::path& manifest_path, const fs::path& out) {
  std::ifstream in(manifest_path);
  if (!in) throw UsageError("cannot read manifest '" + manifest_path.string() + "'");
  json m;
  try {
    m = json::parse(in);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("invalid manifest: ") + e.what());
  }
  return execute(m.at("command").get<std::string>(), m.at("params"), out);
}

/// Seed from the flag, else from SHRINKDIST_SEED, else the default.
inline std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("SHRINKDIST_SEED"); env && *env) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::logic_error&) {
      throw UsageError(std::string("SHRINKDIST_SEED must be an unsigned integer, got '") + env + "'");
    }
  }
  return kDefaultSeed;
}

}  // namespace shrinkdist::cli
