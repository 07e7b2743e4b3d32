#include "sympman/optim.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <optional>
#include <utility>

#include "sympman/errors.hpp"
#include "sympman/symplectic.hpp"

namespace sympman {

namespace {

Matrix jl(const Matrix& m) { return poisson_apply(Side::left, false, m); }
Matrix jlt(const Matrix& m) { return poisson_apply(Side::left, true, m); }
Matrix jr(const Matrix& m) { return poisson_apply(Side::right, false, m); }
Matrix jrt(const Matrix& m) { return poisson_apply(Side::right, true, m); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

// One prepared line-search curve: all (U, direction)-dependent work happens
// in the constructor, each trial t pays only the small solve/exponential.
class StepCurve {
 public:
  StepCurve(const Problem& problem, const DescentState& state) {
    if (problem.mode == ManifoldMode::stiefel_g) {
      if (!state.grad_st)
        throw StructureError("line search: state lacks a Stiefel gradient");
      const StTangent dir = StTangent::scaled(*state.grad_st, -1.0);
      dd_ = metric_g_st(dir, dir);
      switch (problem.retraction) {
        case Retraction::geodesic:
          geo_st_.emplace(dir);
          break;
        case Retraction::cayley:
          cay_st_.emplace(dir);
          break;
        case Retraction::quasi_geodesic:
          quasi_st_.emplace(dir);
          break;
      }
    } else {
      if (!state.grad_gr)
        throw StructureError("line search: state lacks a Grassmann gradient");
      const GrTangentHor dir = GrTangentHor::scaled(*state.grad_gr, -1.0);
      dd_ = metric_g_gr(dir, dir);
      switch (problem.retraction) {
        case Retraction::geodesic:
          geo_gr_.emplace(dir);
          break;
        case Retraction::cayley:
          cay_gr_.emplace(dir);
          break;
        case Retraction::quasi_geodesic:
          throw DomainError(
              "quasi-geodesic stepping is not defined on the Grassmann "
              "quotient");
      }
    }
  }

  double direction_norm_sq() const { return dd_; }

  StPoint at(double t) const {
    if (geo_st_) return geo_st_->at(t);
    if (cay_st_) return cay_st_->at(t);
    if (quasi_st_) return quasi_st_->at(t);
    if (geo_gr_) return geo_gr_->at(t).rep();
    return cay_gr_->at(t).rep();
  }

 private:
  std::optional<RiemannianGeodesicSt> geo_st_;
  std::optional<CayleyCurveSt> cay_st_;
  std::optional<QuasiGeodesicSt> quasi_st_;
  std::optional<RiemannianGeodesicGr> geo_gr_;
  std::optional<CayleyCurveGr> cay_gr_;
  double dd_ = 0.0;
};

// Riemannian gradient of the problem at state.iterate, stored both typed
// (curves need the split/lift) and as the representative-space matrix (the
// BB differences and the grad-norm stopping test use it).
void eval_gradient(const Problem& problem, DescentState& state) {
  const Matrix eg = problem.euclid_grad(state.iterate);
  if (problem.mode == ManifoldMode::stiefel_g) {
    state.grad_st = grad_g_st(state.iterate, eg);
    state.grad = state.grad_st->mat();
    state.grad_gr.reset();
  } else {
    state.grad_gr = grad_g_gr(state.iterate, eg);
    state.grad = state.grad_gr->delta();
    state.grad_st.reset();
  }
}

}  // namespace

void DescentConfig::validate() const {
  if (!(beta > 0.0 && beta < 1.0))
    throw DomainError("DescentConfig: beta must lie in (0,1)");
  if (!(delta > 0.0 && delta < 1.0))
    throw DomainError("DescentConfig: delta must lie in (0,1)");
  if (!(gamma_min > 0.0 && gamma_min < gamma_max))
    throw DomainError("DescentConfig: need 0 < gamma_min < gamma_max");
  if (h_min > h_max)
    throw DomainError("DescentConfig: need h_min <= h_max");
}

double abb_step(DescentState& state, const DescentConfig& cfg) {
  if (state.iter > 0) {
    if (!state.prev_iterate || !state.prev_grad)
      throw StructureError("abb_step: previous iterate/gradient not recorded");
    const Matrix s = state.iterate.mat() - *state.prev_iterate;
    const Matrix y = state.grad - *state.prev_grad;
    const double sy = std::abs(dot(s, y));
    if (sy < 1e-300) {
      state.gamma_abb = cfg.gamma_min;
    } else if (state.iter % 2 == 1) {
      state.gamma_abb = dot(s, s) / sy;
    } else {
      const double yy = dot(y, y);
      state.gamma_abb = yy > 0.0 ? sy / yy : cfg.gamma_min;
    }
  }
  return std::max(cfg.gamma_min, std::min(state.gamma_abb, cfg.gamma_max));
}

LineSearchResult line_search(const Problem& problem, const DescentState& state,
                             double gamma, const DescentConfig& cfg) {
  const StepCurve curve(problem, state);
  const double dd = curve.direction_norm_sq();

  std::optional<StPoint> last_point;
  double last_f = 0.0;
  double last_t = 0.0;
  for (int h = cfg.h_min; h <= cfg.h_max; ++h) {
    const double t = gamma * std::pow(cfg.delta, h);
    std::optional<StPoint> trial;
    try {
      trial = curve.at(t);
    } catch (const SingularMatrixError&) {
      continue;  // this trial counts as f = +inf
    }
    const double ft = problem.objective(*trial);
    last_point = std::move(trial);
    last_f = ft;
    last_t = t;
    if (ft <= state.fval - cfg.beta * t * dd)
      return {t, std::move(*last_point), ft, false};
  }
  if (!last_point)
    throw StepFailureError("line search: every trial step was singular");
  return {last_t, std::move(*last_point), last_f, true};
}

DescentState descend(const Problem& problem, const StPoint& u0,
                     const DescentConfig& cfg) {
  cfg.validate();
  if (!problem.objective || !problem.euclid_grad)
    throw StructureError("descend: problem lacks objective or gradient");

  const auto t0 = std::chrono::steady_clock::now();
  DescentState state(u0, problem.objective(u0));
  const double sqrt_dim = std::sqrt(static_cast<double>(u0.mat().rows()));

  for (int it = 0; it < cfg.max_iters; ++it) {
    state.iter = it;
    eval_gradient(problem, state);
    const double gnorm = state.grad.frobenius_norm();
    const double gamma = abb_step(state, cfg);
    LineSearchResult ls = line_search(problem, state, gamma, cfg);
    if (ls.exhausted) state.backtrack_warning = true;
    state.trace.push_back({it, state.fval, gnorm, ls.t, seconds_since(t0)});

    const bool converged =
        gnorm < cfg.eps_grad &&
        std::abs(state.fval - ls.fnext) / (std::abs(state.fval) + 1.0) <
            cfg.eps_f &&
        (state.iterate.mat() - ls.next.mat()).frobenius_norm() / sqrt_dim <
            cfg.eps_x;

    state.prev_iterate = state.iterate.mat();
    state.prev_grad = state.grad;
    state.iterate = std::move(ls.next);
    state.fval = ls.fnext;
    state.iter = it + 1;
    if (converged) {
      state.converged = true;
      break;
    }
  }

  eval_gradient(problem, state);
  state.trace.push_back({state.iter, state.fval, state.grad.frobenius_norm(),
                         0.0, seconds_since(t0)});
  return state;
}

Problem nearest_symplectic_problem(Matrix a) {
  auto target = std::make_shared<const Matrix>(std::move(a));
  Problem p;
  p.objective = [target](const StPoint& u) {
    const double r = (u.mat() - *target).frobenius_norm();
    return r * r;
  };
  p.euclid_grad = [target](const StPoint& u) {
    return 2.0 * (u.mat() - *target);
  };
  p.mode = ManifoldMode::stiefel_g;
  return p;
}

Problem subspace_fit_problem(Matrix s) {
  if (s.rows() != s.cols())
    throw DimensionError("subspace_fit_problem: data matrix must be square");
  auto data = std::make_shared<const Matrix>(std::move(s));
  Problem p;
  p.objective = [data](const StPoint& u) {
    const Matrix r =
        *data - u.mat() * (symplectic_inverse(u.mat()) * *data);
    const double rn = r.frobenius_norm();
    return rn * rn;
  };
  p.euclid_grad = [data](const StPoint& u) {
    const Matrix& s_ref = *data;
    const Matrix r = s_ref - u.mat() * (symplectic_inverse(u.mat()) * s_ref);
    const Matrix term1 = jr(r * matmul_tn(s_ref, jlt(u.mat())));
    const Matrix term2 = jrt(jl(s_ref * matmul_tn(r, u.mat())));
    return -2.0 * (term1 + term2);
  };
  p.mode = ManifoldMode::grassmann_g;
  return p;
}

}  // namespace sympman
