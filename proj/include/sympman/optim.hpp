#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "sympman/matrix.hpp"
#include "sympman/sp_grassmann.hpp"
#include "sympman/sp_stiefel.hpp"

namespace sympman {

// Gradient descent with an alternating Barzilai-Borwein trial step and a
// monotone backtracking line search on SpSt(2n,2k) / SpGr(2n,2k).

struct DescentConfig {
  double beta = 1e-4;       // sufficient-decrease constant
  double delta = 0.1;       // backtracking shrink factor
  double gamma_min = 1e-15;  // trial-step clamp, lower
  double gamma_max = 1e15;   // trial-step clamp, upper
  int h_min = 0;            // backtracking exponent range
  int h_max = 5;
  double eps_grad = 1e-6;  // gradient-norm tolerance
  double eps_x = 1e-6;     // relative iterate-change tolerance
  double eps_f = 1e-12;    // relative objective-change tolerance
  int max_iters = 100;

  // Throws DomainError when a field is outside its documented range.
  void validate() const;
};

enum class ManifoldMode { stiefel_g, grassmann_g };
enum class Retraction { geodesic, cayley, quasi_geodesic };

struct Problem {
  std::function<double(const StPoint&)> objective;
  std::function<Matrix(const StPoint&)> euclid_grad;
  ManifoldMode mode = ManifoldMode::stiefel_g;
  Retraction retraction = Retraction::cayley;
};

struct TraceRow {
  int iter;
  double fval;
  double grad_norm;
  double step_t;
  double wall_time;  // seconds since descent start; informative only
};

struct DescentState {
  DescentState(StPoint u0, double f0)
      : iterate(std::move(u0)), fval(f0), gamma_abb(f0) {}

  StPoint iterate;
  double fval;
  // Riemannian gradient at the iterate, representative form (Delta). The
  // typed forms carry the split/lift needed to build step curves.
  Matrix grad;
  std::optional<StTangent> grad_st;
  std::optional<GrTangentHor> grad_gr;
  std::optional<Matrix> prev_iterate;
  std::optional<Matrix> prev_grad;
  double gamma_abb;  // persisted raw alternating-BB value (unclamped)
  int iter = 0;
  bool converged = false;
  bool backtrack_warning = false;  // some step fell back to the last trial
  std::vector<TraceRow> trace;
};

// Alternating Barzilai-Borwein trial step. Updates state.gamma_abb from
// (prev_iterate, prev_grad, iterate, grad) with the odd/even rule on ambient
// Frobenius inner products and returns the [gamma_min, gamma_max] clamp of
// it. At iteration 0 the persisted value is f(U_0).
double abb_step(DescentState& state, const DescentConfig& cfg);

struct LineSearchResult {
  double t;
  StPoint next;
  double fnext;
  bool exhausted;  // no trial satisfied the decrease test; took last trial
};

// Backtracking search along the problem's retraction from state.iterate in
// direction -grad: tries t = gamma delta^h for h = h_min..h_max and accepts
// the first t with f(R(t)) <= f - beta t <grad,grad>. If no trial passes,
// returns the last evaluable trial with exhausted = true. A singular
// retraction at one trial counts as f = +inf; all trials singular raises
// StepFailureError.
LineSearchResult line_search(const Problem& problem, const DescentState& state,
                             double gamma, const DescentConfig& cfg);

// Full descent loop: gradient, ABB trial step, line search, nested stopping
// test (grad norm < eps_grad AND relative f-change < eps_f AND relative
// x-change < eps_x), up to max_iters. The trace gets one row per iteration
// (state before the step plus the accepted t) and a final row for the last
// iterate with step_t = 0.
DescentState descend(const Problem& problem, const StPoint& u0,
                     const DescentConfig& cfg);

// min ||U - A||_F^2 over SpSt(2n,2k); Euclidean gradient 2(U - A).
Problem nearest_symplectic_problem(Matrix a);

// min ||S - U U^+ S||_F^2 over SpGr(2n,2k) (representative-invariant);
// Euclidean gradient -2(R S^T J^T U J_{2k} + J S R^T U J_{2k}^T), R = S - UU^+S.
Problem subspace_fit_problem(Matrix s);

}  // namespace sympman
