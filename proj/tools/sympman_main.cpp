#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sympman/errors.hpp"
#include "sympman/experiments.hpp"

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

sympman::CurveKind parse_curve(const std::string& name) {
  if (name == "geodesic") return sympman::CurveKind::geodesic;
  if (name == "cayley") return sympman::CurveKind::cayley;
  if (name == "pseudo_geodesic") return sympman::CurveKind::pseudo_geodesic;
  if (name == "quasi_geodesic") return sympman::CurveKind::quasi_geodesic;
  throw UsageError("unknown retraction '" + name +
                   "' (expected geodesic|cayley|pseudo_geodesic|"
                   "quasi_geodesic)");
}

sympman::Retraction parse_retraction(const std::string& name) {
  if (name == "geodesic") return sympman::Retraction::geodesic;
  if (name == "cayley") return sympman::Retraction::cayley;
  if (name == "quasi_geodesic") return sympman::Retraction::quasi_geodesic;
  throw UsageError("unknown retraction '" + name +
                   "' (expected geodesic|cayley|quasi_geodesic)");
}

sympman::ManifoldMode parse_metric(const std::string& name) {
  if (name == "stiefel") return sympman::ManifoldMode::stiefel_g;
  if (name == "grassmann") return sympman::ManifoldMode::grassmann_g;
  throw UsageError("unknown metric '" + name +
                   "' (expected stiefel|grassmann)");
}

std::vector<sympman::OptimCombo> build_combos(
    const std::vector<std::string>& metrics,
    const std::vector<std::string>& retractions, bool allow_grassmann) {
  std::vector<sympman::OptimCombo> combos;
  for (const std::string& m : metrics) {
    const sympman::ManifoldMode mode = parse_metric(m);
    if (mode == sympman::ManifoldMode::grassmann_g && !allow_grassmann)
      throw UsageError(
          "the nearest objective is not subspace-invariant; --metrics must "
          "be stiefel");
    for (const std::string& r : retractions) {
      const sympman::Retraction retr = parse_retraction(r);
      if (mode == sympman::ManifoldMode::grassmann_g &&
          retr == sympman::Retraction::quasi_geodesic)
        throw UsageError(
            "quasi_geodesic stepping is not defined for the grassmann "
            "metric");
      combos.push_back({mode, retr});
    }
  }
  return combos;
}

void write_optim_outputs(const sympman::OptimReport& report,
                         const std::string& out) {
  for (const sympman::ComboResult& combo : report.combos)
    sympman::write_trace_csv(combo.trace0, out + "." + combo.name + ".csv");
  sympman::write_summary_csv(report, out + ".summary.csv");
  std::cout << sympman::format_summary_table(report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Geometry and optimization on the symplectic Stiefel and Grassmann "
      "manifolds"};
  app.require_subcommand(1);

  std::size_t n = 100, k = 10;
  std::uint64_t seed = 0;
  int runs = 10, t_samples = 500, max_iters = 100;
  double t_max = 1e3, scale_a = 1.0, noise = 1.0;
  std::string out_path;
  std::vector<std::string> retractions, metrics;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "Half-dimension n of the ambient space");
    cmd->add_option("--k", k, "Half-dimension k of the frame");
    cmd->add_option("--seed", seed, "Base seed; run r uses seed + r");
    cmd->add_option("--runs", runs, "Number of averaged runs");
    cmd->add_option("--out", out_path, "Output CSV path")->required();
  };

  CLI::App* feas = app.add_subcommand(
      "feasibility", "Feasibility drift of the retraction curves");
  add_common(feas);
  feas->add_option("--retractions", retractions,
                   "Comma list: geodesic,cayley,pseudo_geodesic,"
                   "quasi_geodesic")
      ->delimiter(',');
  feas->add_option("--t-max", t_max, "Largest curve parameter t");
  feas->add_option("--t-samples", t_samples,
                   "Number of logarithmically spaced samples");

  CLI::App* nearest = app.add_subcommand(
      "nearest", "Nearest-symplectic-matrix descent study");
  add_common(nearest);
  nearest->add_option("--retractions", retractions,
                      "Comma list: geodesic,cayley,quasi_geodesic")
      ->delimiter(',');
  nearest->add_option("--metrics", metrics, "Comma list: stiefel")
      ->delimiter(',');
  nearest->add_option("--max-iters", max_iters, "Iteration cap per run");
  nearest->add_option("--scale-a", scale_a, "2-norm of the target matrix A");

  CLI::App* subspace = app.add_subcommand(
      "subspace", "Symplectic-subspace fit descent study");
  add_common(subspace);
  subspace->add_option("--retractions", retractions,
                       "Comma list: geodesic,cayley")
      ->delimiter(',');
  subspace->add_option("--metrics", metrics,
                       "Comma list: grassmann,stiefel")
      ->delimiter(',');
  subspace->add_option("--max-iters", max_iters, "Iteration cap per run");
  subspace->add_option("--noise", noise,
                       "2-norm of the data perturbation (0 disables it)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  sympman::ExperimentConfig cfg;
  try {
    cfg.n = n;
    cfg.k = k;
    cfg.seed = seed;
    cfg.runs = runs;
    cfg.t_max = t_max;
    cfg.t_samples = t_samples;
    cfg.max_iters = max_iters;
    cfg.scale_a = scale_a;
    cfg.noise = noise;
    if (feas->parsed()) {
      if (retractions.empty())
        retractions = {"geodesic", "cayley", "pseudo_geodesic",
                       "quasi_geodesic"};
      for (const std::string& r : retractions)
        cfg.curves.push_back(parse_curve(r));
    } else {
      if (retractions.empty()) retractions = {"geodesic", "cayley"};
      if (metrics.empty())
        metrics = nearest->parsed() ? std::vector<std::string>{"stiefel"}
                                    : std::vector<std::string>{"grassmann",
                                                               "stiefel"};
      cfg.combos = build_combos(metrics, retractions, subspace->parsed());
    }
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (feas->parsed()) {
      sympman::write_feasibility_csv(sympman::run_feasibility(cfg), out_path);
    } else if (nearest->parsed()) {
      write_optim_outputs(sympman::run_nearest(cfg), out_path);
    } else {
      write_optim_outputs(sympman::run_subspace(cfg), out_path);
    }
  } catch (const sympman::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
