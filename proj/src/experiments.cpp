#include "sympman/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <thread>
#include <utility>

#include "sympman/errors.hpp"
#include "sympman/linalg.hpp"
#include "sympman/random.hpp"
#include "sympman/sp_stiefel.hpp"
#include "sympman/symplectic.hpp"

namespace sympman {

namespace {

int thread_budget() {
  const char* env = std::getenv("SYMPMAN_THREADS");
  if (!env) return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1) return 1;
  return static_cast<int>(std::min(v, 256L));
}

// Runs `count` independent tasks on up to SYMPMAN_THREADS workers. Tasks
// write only their own slots, so the outcome does not depend on the worker
// count; the first failure (by task index) is rethrown after all workers
// finish.
template <typename Task>
void run_tasks(int count, Task task) {
  std::vector<std::exception_ptr> errors(count);
  const int workers = std::min(thread_budget(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) {
      try {
        task(i);
      } catch (...) {
        errors[i] = std::current_exception();
        break;
      }
    }
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
          try {
            task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
  }
  for (int i = 0; i < count; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Shortest round-trip decimal form; NaN prints as "nan" (sign bit dropped),
// infinities as "inf"/"-inf", so repeated runs produce byte-identical files.
std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

// Feasibility-experiment curve: one prepared object evaluated many times.
class FeasCurve {
 public:
  FeasCurve(CurveKind kind, const StTangent& d) {
    switch (kind) {
      case CurveKind::geodesic:
        geo_.emplace(d);
        break;
      case CurveKind::cayley:
        cay_.emplace(d);
        break;
      case CurveKind::pseudo_geodesic:
        pseudo_.emplace(d);
        break;
      case CurveKind::quasi_geodesic:
        quasi_.emplace(d);
        break;
    }
  }

  StPoint at(double t) const {
    if (geo_) return geo_->at(t);
    if (cay_) return cay_->at(t);
    if (pseudo_) return pseudo_->at(t);
    return quasi_->at(t);
  }

 private:
  std::optional<RiemannianGeodesicSt> geo_;
  std::optional<CayleyCurveSt> cay_;
  std::optional<PseudoGeodesicSt> pseudo_;
  std::optional<QuasiGeodesicSt> quasi_;
};

struct RunOutcome {
  int iters = 0;
  double final_fval = 0.0;
  bool converged = false;
  double wall = 0.0;
  std::vector<TraceRow> trace;  // kept for seed 0 only
};

// Shared driver for run_nearest / run_subspace: builds the per-seed problem
// through `make_problem(rng)` (identical draw order for every combo) and
// aggregates the per-combo statistics.
template <typename MakeProblem>
OptimReport run_descents(const ExperimentConfig& cfg,
                         MakeProblem make_problem) {
  const int ncombo = static_cast<int>(cfg.combos.size());
  const int nruns = cfg.runs;
  std::vector<std::vector<RunOutcome>> outcome(
      ncombo, std::vector<RunOutcome>(nruns));

  run_tasks(ncombo * nruns, [&](int idx) {
    const int c = idx / nruns;
    const int s = idx % nruns;
    const OptimCombo& combo = cfg.combos[c];
    try {
      Rng rng(cfg.seed + static_cast<std::uint64_t>(s));
      Problem problem = make_problem(rng);
      problem.mode = combo.mode;
      problem.retraction = combo.retraction;
      StPoint u0(
          rand_stiefel_point(rng, cfg.n, cfg.k, StiefelScale::cay_half));

      DescentConfig dc;
      dc.max_iters = cfg.max_iters;
      const auto t0 = std::chrono::steady_clock::now();
      DescentState state = descend(problem, u0, dc);

      RunOutcome& out = outcome[c][s];
      out.iters = state.iter;
      out.final_fval = state.fval;
      out.converged = state.converged;
      out.wall = seconds_since(t0);
      if (s == 0) out.trace = std::move(state.trace);
    } catch (const StepFailureError& e) {
      throw StepFailureError(combo_name(combo) + " seed " + std::to_string(s) +
                             ": " + e.what());
    } catch (const DomainError& e) {
      throw DomainError(combo_name(combo) + " seed " + std::to_string(s) +
                        ": " + e.what());
    }
  });

  OptimReport report;
  report.combos.reserve(ncombo);
  for (int c = 0; c < ncombo; ++c) {
    ComboResult res;
    res.name = combo_name(cfg.combos[c]);
    res.all_converged = true;
    res.iters_mean = 0.0;
    res.iters_max = 0;
    res.fval_mean = 0.0;
    res.rel_dev_max = 0.0;
    res.runtime_sec = 0.0;
    for (int s = 0; s < nruns; ++s) {
      const RunOutcome& out = outcome[c][s];
      res.all_converged = res.all_converged && out.converged;
      res.iters_mean += out.iters;
      res.iters_max = std::max(res.iters_max, out.iters);
      res.fval_mean += out.final_fval;
      res.runtime_sec += out.wall;
      res.finals.push_back(out.final_fval);
    }
    res.iters_mean /= nruns;
    res.fval_mean /= nruns;
    res.trace0 = std::move(outcome[c][0].trace);
    report.combos.push_back(std::move(res));
  }

  for (int s = 0; s < nruns; ++s) {
    double fmin = outcome[0][s].final_fval;
    for (int c = 1; c < ncombo; ++c)
      fmin = std::min(fmin, outcome[c][s].final_fval);
    for (int c = 0; c < ncombo; ++c) {
      const double dev = (outcome[c][s].final_fval - fmin) /
                         std::max(1.0, std::abs(fmin));
      report.combos[c].rel_dev_max = std::max(report.combos[c].rel_dev_max, dev);
    }
  }
  return report;
}

}  // namespace

std::string curve_name(CurveKind c) {
  switch (c) {
    case CurveKind::geodesic:
      return "geodesic";
    case CurveKind::cayley:
      return "cayley";
    case CurveKind::pseudo_geodesic:
      return "pseudo_geodesic";
    case CurveKind::quasi_geodesic:
      return "quasi_geodesic";
  }
  throw DomainError("unknown curve kind");
}

std::string combo_name(const OptimCombo& c) {
  std::string name =
      c.mode == ManifoldMode::stiefel_g ? "stiefel_" : "grassmann_";
  switch (c.retraction) {
    case Retraction::geodesic:
      return name + "geodesic";
    case Retraction::cayley:
      return name + "cayley";
    case Retraction::quasi_geodesic:
      return name + "quasi_geodesic";
  }
  throw DomainError("unknown retraction");
}

void ExperimentConfig::validate() const {
  if (k < 1 || n < k) throw DomainError("ExperimentConfig: need n >= k >= 1");
  if (runs < 1) throw DomainError("ExperimentConfig: need runs >= 1");
  if (t_samples < 2) throw DomainError("ExperimentConfig: need t_samples >= 2");
  if (!(t_max > 0.0)) throw DomainError("ExperimentConfig: need t_max > 0");
  if (max_iters < 1) throw DomainError("ExperimentConfig: need max_iters >= 1");
}

FeasibilityTable run_feasibility(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.curves.empty())
    throw DomainError("feasibility experiment: empty retraction set");

  const int ns = cfg.t_samples;
  const int ncur = static_cast<int>(cfg.curves.size());
  FeasibilityTable table;
  table.t.resize(ns);
  const double tmin = cfg.t_max * 1e-6;
  for (int i = 0; i < ns; ++i)
    table.t[i] =
        tmin * std::pow(cfg.t_max / tmin,
                        static_cast<double>(i) / static_cast<double>(ns - 1));
  for (const CurveKind c : cfg.curves) table.columns.push_back(curve_name(c));

  // residual[run][curve][sample]
  std::vector<std::vector<std::vector<double>>> residual(
      cfg.runs, std::vector<std::vector<double>>(
                    ncur, std::vector<double>(ns, 0.0)));

  run_tasks(cfg.runs, [&](int r) {
    Rng rng(cfg.seed + static_cast<std::uint64_t>(r));
    const StPoint u(
        rand_stiefel_point(rng, cfg.n, cfg.k, StiefelScale::cay_one));
    const StTangent d = rand_stiefel_tangent(rng, u, false);
    for (int c = 0; c < ncur; ++c) {
      const FeasCurve curve(cfg.curves[c], d);
      for (int i = 0; i < ns; ++i) {
        double value;
        try {
          value = symplectic_feasibility(curve.at(table.t[i]).mat());
        } catch (const SingularMatrixError&) {
          value = std::numeric_limits<double>::quiet_NaN();
        }
        residual[r][c][i] = value;
      }
    }
  });

  table.feas.assign(ncur, std::vector<double>(ns, 0.0));
  for (int c = 0; c < ncur; ++c)
    for (int i = 0; i < ns; ++i) {
      double sum = 0.0;
      for (int r = 0; r < cfg.runs; ++r) sum += residual[r][c][i];
      table.feas[c][i] = sum / cfg.runs;
    }
  return table;
}

OptimReport run_nearest(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.combos.empty())
    throw DomainError("nearest experiment: empty method set");
  for (const OptimCombo& combo : cfg.combos)
    if (combo.mode == ManifoldMode::grassmann_g)
      throw DomainError(
          "nearest experiment: objective is not representative-invariant; "
          "the grassmann metric does not apply");

  const std::size_t rows = 2 * cfg.n, cols = 2 * cfg.k;
  const double scale_a = cfg.scale_a;
  return run_descents(cfg, [rows, cols, scale_a](Rng& rng) {
    Matrix a = rng.gaussian_matrix(rows, cols);
    a *= scale_a / spectral_norm(a);
    return nearest_symplectic_problem(std::move(a));
  });
}

OptimReport run_subspace(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.combos.empty())
    throw DomainError("subspace experiment: empty method set");

  const std::size_t n = cfg.n, k = cfg.k;
  const double noise = cfg.noise;
  return run_descents(cfg, [n, k, noise](Rng& rng) {
    const Matrix a = rand_stiefel_point(rng, n, k, StiefelScale::cay_half);
    Matrix s = a * symplectic_inverse(a);
    if (noise > 0.0) {
      Matrix e = rng.gaussian_matrix(2 * n, 2 * n);
      e *= noise / spectral_norm(e);
      s += e;
    }
    return subspace_fit_problem(std::move(s));
  });
}

void write_feasibility_csv(const FeasibilityTable& table,
                           const std::string& path) {
  std::ofstream out = open_out(path);
  out << "t";
  for (const std::string& name : table.columns) out << ',' << name;
  out << '\n';
  for (std::size_t i = 0; i < table.t.size(); ++i) {
    out << fmt(table.t[i]);
    for (std::size_t c = 0; c < table.feas.size(); ++c)
      out << ',' << fmt(table.feas[c][i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_trace_csv(const std::vector<TraceRow>& trace,
                     const std::string& path) {
  std::ofstream out = open_out(path);
  out << "iter,fval,gradnorm,step_t\n";
  for (const TraceRow& row : trace)
    out << row.iter << ',' << fmt(row.fval) << ',' << fmt(row.grad_norm) << ','
        << fmt(row.step_t) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_summary_csv(const OptimReport& report, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "combo,converged,iterations,final_fval,rel_dev_from_min\n";
  for (const ComboResult& res : report.combos)
    out << res.name << ',' << (res.all_converged ? 1 : 0) << ','
        << fmt(res.iters_mean) << ',' << fmt(res.fval_mean) << ','
        << fmt(res.rel_dev_max) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string format_summary_table(const OptimReport& report) {
  std::string text;
  char line[160];
  std::snprintf(line, sizeof(line), "%-22s %-5s %10s %13s %13s %10s\n",
                "method", "conv", "iters", "final f", "rel dev", "time [s]");
  text += line;
  for (const ComboResult& res : report.combos) {
    std::snprintf(line, sizeof(line), "%-22s %-5s %10.1f %13.6e %13.6e %10.3f\n",
                  res.name.c_str(), res.all_converged ? "yes" : "NO",
                  res.iters_mean, res.fval_mean, res.rel_dev_max,
                  res.runtime_sec);
    text += line;
  }
  return text;
}

}  // namespace sympman
