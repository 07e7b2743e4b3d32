#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "sympman/optim.hpp"

namespace sympman {

// Retraction curves compared by the feasibility experiment.
enum class CurveKind { geodesic, cayley, pseudo_geodesic, quasi_geodesic };

struct OptimCombo {
  ManifoldMode mode;
  Retraction retraction;
};

std::string curve_name(CurveKind c);
std::string combo_name(const OptimCombo& c);

struct ExperimentConfig {
  std::size_t n = 100;
  std::size_t k = 10;
  std::uint64_t seed = 0;
  int runs = 10;
  std::vector<CurveKind> curves;     // feasibility columns
  std::vector<OptimCombo> combos;    // optimization methods
  double t_max = 1e3;                // feasibility grid endpoint
  int t_samples = 500;
  int max_iters = 100;
  double scale_a = 1.0;              // target 2-norm of A (nearest)
  double noise = 1.0;                // perturbation 2-norm (subspace); 0 disables

  // Throws DomainError when a field is outside its documented range.
  void validate() const;
};

// Feasibility drift ||U(t)^+U(t) - I||_F per curve, averaged over runs.
// Samples are logarithmically spaced on [t_max 1e-6, t_max]. A singular
// curve evaluation contributes NaN to its cell.
struct FeasibilityTable {
  std::vector<double> t;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> feas;  // feas[column][sample]
};

FeasibilityTable run_feasibility(const ExperimentConfig& cfg);

// Aggregated descent results for one (metric, retraction) method.
struct ComboResult {
  std::string name;
  bool all_converged;
  double iters_mean;
  int iters_max;
  double fval_mean;
  double rel_dev_max;  // max over seeds of (f - f_min_seed)/max(1,|f_min_seed|)
  double runtime_sec;  // informative only, never written to CSV
  std::vector<TraceRow> trace0;  // trace of the first seed
  std::vector<double> finals;    // final objective per seed
};

struct OptimReport {
  std::vector<ComboResult> combos;
};

// Nearest-symplectic-matrix study: per seed, A is Gaussian scaled to
// 2-norm scale_a and U0 = cay(X/2)E; every combo runs on the same instances.
OptimReport run_nearest(const ExperimentConfig& cfg);

// Symplectic-subspace fit: per seed, S = A A^+ + noise * E/||E||_2 with a
// random symplectic Stiefel A; Grassmann combos use the quotient gradient,
// Stiefel combos run the same objective on representatives.
OptimReport run_subspace(const ExperimentConfig& cfg);

// CSV writers: comma-separated, headered, '.' decimal, shortest round-trip
// number formatting, NaN spelled "nan". Deterministic for fixed inputs.
void write_feasibility_csv(const FeasibilityTable& table,
                           const std::string& path);
void write_trace_csv(const std::vector<TraceRow>& trace,
                     const std::string& path);
void write_summary_csv(const OptimReport& report, const std::string& path);

// Aligned text table of the summary, including the informative runtimes.
std::string format_summary_table(const OptimReport& report);

}  // namespace sympman
