#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "cli.hpp"

namespace {

using namespace shrinkdist;
using namespace shrinkdist::cli;

struct ModelFlags {
  std::optional<long long> n;
  std::optional<double> theta;
  std::optional<double> eta;
  double a = kDefaultScadA;
  std::string kind = "hard";
  std::string scaling = "sqrt_n";
  std::optional<std::uint64_t> seed;
  std::optional<long long> reps;
  std::string out = ".";
};

void add_model_flags(CLI::App* app, ModelFlags& f, bool with_kind) {
  app->add_option("--n", f.n, "sample size");
  app->add_option("--theta", f.theta, "true location");
  app->add_option("--eta", f.eta, "threshold");
  app->add_option("--a", f.a, "SCAD shape parameter (> 2)");
  if (with_kind) app->add_option("--kind", f.kind, "estimator: hard, soft or scad");
  app->add_option("--out", f.out, "output directory");
}

int report(const CommandResult& r, const std::string& out) {
  for (const auto& f : r.outputs) std::cout << (std::filesystem::path(out) / f).string() << '\n';
  if (!r.pass) std::cerr << "verdict: FAIL\n";
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-sample and limiting laws of thresholding estimators"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  ModelFlags f;

  int which = 1;
  auto* fig = app.add_subcommand("figure", "density plot of a finite-sample law (CSV + SVG)");
  fig->add_option("which", which, "figure number 1, 2 or 3")->required()->check(CLI::IsMember({1, 2, 3}));
  add_model_flags(fig, f, false);

  std::optional<double> lo, hi;
  std::optional<long long> count;
  std::string from_json;
  auto* dist = app.add_subcommand("dist", "cdf and density table of a finite-sample law (CSV + JSON)");
  add_model_flags(dist, f, true);
  dist->add_option("--scaling", f.scaling, "sqrt_n or inv_eta");
  dist->add_option("--lo", lo, "grid start");
  dist->add_option("--hi", hi, "grid end");
  dist->add_option("--count", count, "grid size");
  dist->add_option("--from-json", from_json, "re-emit the CSV of a saved dist.json");

  auto* sim = app.add_subcommand("simulate", "Monte Carlo draws against the closed-form law");
  add_model_flags(sim, f, true);
  sim->add_option("--seed", f.seed, "seed (falls back to SHRINKDIST_SEED)");
  sim->add_option("--reps", f.reps, "replications");

  std::string exp_name;
  std::string config;
  auto* exp = app.add_subcommand("experiment", "selection, limits, uniform-rate or impossibility experiment");
  exp->add_option("name", exp_name, "experiment name")
      ->required()
      ->check(CLI::IsMember({"selection", "limits", "uniform-rate", "impossibility"}));
  exp->add_option("--config", config, "key=value or JSON config file");
  exp->add_option("--seed", f.seed, "seed (falls back to SHRINKDIST_SEED)");
  exp->add_option("--reps", f.reps, "replications per grid point");
  exp->add_option("--out", f.out, "output directory");

  std::string manifest;
  std::optional<std::string> replay_out;
  auto* rep = app.add_subcommand("replay", "re-run a command from its manifest.json");
  rep->add_option("manifest", manifest, "path to manifest.json")->required();
  rep->add_option("--out", replay_out, "output directory (default: the manifest's directory)");

  CLI11_PARSE(app, argc, argv);

  try {
    Params p = Params::object();
    if (*fig) {
      const FigureDefaults def = figure_defaults(which);
      p["which"] = which;
      p["n"] = f.n.value_or(def.n);
      p["theta"] = f.theta.value_or(def.theta);
      p["eta"] = f.eta.value_or(def.eta);
      p["a"] = f.a;
      (void)TuningPlan(p["eta"].get<double>(), f.a);
      return report(execute("figure", p, f.out), f.out);
    }
    if (*dist) {
      if (!from_json.empty()) {
        p["from_json"] = from_json;
      } else {
        p["kind"] = f.kind;
        p["n"] = f.n.value_or(40);
        p["theta"] = f.theta.value_or(0.16);
        p["eta"] = f.eta.value_or(0.05);
        p["a"] = f.a;
        p["scaling"] = f.scaling;
        if (lo) p["lo"] = *lo;
        if (hi) p["hi"] = *hi;
        if (count) p["count"] = *count;
      }
      return report(execute("dist", p, f.out), f.out);
    }
    if (*sim) {
      p["kind"] = f.kind;
      p["n"] = f.n.value_or(40);
      p["theta"] = f.theta.value_or(0.16);
      p["eta"] = f.eta.value_or(0.05);
      p["a"] = f.a;
      p["seed"] = resolve_seed(f.seed);
      p["reps"] = f.reps.value_or(100000);
      return report(execute("simulate", p, f.out), f.out);
    }
    if (*exp) {
      if (!config.empty()) p = read_config(config);
      p["name"] = exp_name;
      if (f.seed || !has(p, "seed")) p["seed"] = resolve_seed(f.seed);
      if (f.reps) p["reps"] = *f.reps;
      return report(execute("experiment", p, f.out), f.out);
    }
    if (*rep) {
      const std::string out = replay_out.value_or(std::filesystem::path(manifest).parent_path().string());
      return report(replay(manifest, out.empty() ? "." : out), out.empty() ? "." : out);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
