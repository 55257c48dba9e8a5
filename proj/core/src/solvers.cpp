#include "pigd/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace pigd {

void validate(const RunConfig& cfg) {
  require(cfg.max_iters >= 1, "run config: max_iters must be >= 1");
  require(cfg.record_every >= 1, "run config: record_every must be >= 1");
  require(std::isfinite(cfg.stop_tol) && cfg.stop_tol >= 0.0, "run config: stop_tol must be >= 0");
}

namespace {

void check_state(const CompositeProblem& problem, const IterateState& state) {
  require(state.x_curr.size() == problem.dim() && state.x_prev.size() == problem.dim(),
          "iterate state: dimension mismatch");
}

void check_beta(double beta, double upper, const char* who) {
  require(std::isfinite(beta) && beta >= 0.0 && beta < upper,
          std::string(who) + ": beta out of range");
}

Vector checked_grad(const CompositeProblem& problem, const Vector& x) {
  Vector g = problem.smooth_grad(x);
  if (!g.allFinite()) throw NumericalError("non-finite gradient");
  return g;
}

Vector step_from_grad(const CompositeProblem& problem, const IterateState& state, const Vector& grad,
                      double gamma, double beta) {
  const Vector v = state.x_curr - gamma * grad + beta * (state.x_curr - state.x_prev);
  return prox_full(problem, v, gamma);
}

Vector block_update_from_grad(const CompositeProblem& problem, const IterateState& state,
                              const Vector& grad, double gamma, double beta, std::size_t i) {
  const auto& blocks = problem.blocks();
  const Vector xi = blocks.gather(state.x_curr, i);
  const Vector v = xi - gamma * blocks.gather(grad, i) + beta * (xi - blocks.gather(state.x_prev, i));
  Vector out = state.x_curr;
  blocks.scatter(out, i, prox_block(problem, i, v, gamma));
  return out;
}

// Quantities measured at x^k before the step out of it.
struct Probe {
  double F = 0.0;
  Vector grad;
  double residual_sq = 0.0;
  double step_sq = 0.0;
  Vector block_step_sq;
};

Probe probe(const CompositeProblem& problem, const IterateState& state) {
  Probe p;
  p.F = objective(problem, state.x_curr);
  p.grad = checked_grad(problem, state.x_curr);
  const double l = problem.lipschitz();
  const Vector s = state.x_curr - prox_full(problem, state.x_curr - p.grad / l, 1.0 / l);
  p.residual_sq = s.squaredNorm();
  const Vector d = state.x_curr - state.x_prev;
  p.step_sq = d.squaredNorm();
  const auto& blocks = problem.blocks();
  p.block_step_sq.resize(static_cast<Index>(blocks.count()));
  for (std::size_t i = 0; i < blocks.count(); ++i)
    p.block_step_sq(static_cast<Index>(i)) = blocks.gather(d, i).squaredNorm();
  return p;
}

struct StepParams {
  double beta = 0.0;
  double gamma = 0.0;
  Vector block_gammas;
};

// Per-variant pieces plugged into the shared driver.
struct VariantOps {
  std::function<StepParams(std::size_t k)> params;
  // Potential added to F(x^k) in the Lyapunov column and in the descent audit.
  std::function<double(const StepParams&, const Probe&)> lyapunov_extra;
  std::function<double(const StepParams&, const Probe&)> audit_potential;
  // Coefficient on ‖x^{k+1} - x^k‖² in the descent inequality for the step out of x^k.
  std::function<double(const StepParams&)> decrease_coeff;
  std::function<std::pair<Vector, std::size_t>(const IterateState&, const StepParams&, const Vector&)>
      step;
};

Trace drive(const CompositeProblem& problem, const Vector& x0, const RunConfig& cfg, TraceMeta meta,
            const VariantOps& ops) {
  validate(cfg);
  require(x0.size() == problem.dim(), "run: x0 dimension mismatch");
  Trace trace;
  trace.meta = std::move(meta);
  trace.meta.lipschitz = problem.lipschitz();
  trace.meta.block_lipschitz = problem.block_lipschitz();
  trace.meta.m = problem.block_count();
  trace.meta.f_star_known = problem.f_star().has_value();
  trace.meta.f_star = problem.f_star().value_or(0.0);
  const double f_star = trace.meta.f_star;
  const double star_tol = 1e-9 * (1.0 + std::abs(f_star));

  IterateState state = IterateState::start(x0);
  const double f0 = objective(problem, x0);
  require(std::isfinite(f0), "run: F(x0) must be finite (x0 outside dom g?)");
  const double blowup = 1e10 * std::max(1.0, std::abs(f0));

  StepParams prev_params;
  Probe prev_probe;
  double min_step = kInf;
  for (std::size_t k = 0;; ++k) {
    Probe pr = probe(problem, state);
    if (!std::isfinite(pr.F) || !std::isfinite(pr.residual_sq) || !std::isfinite(pr.step_sq))
      throw NumericalError("non-finite value at iteration " + std::to_string(k));
    if (std::abs(pr.F) > blowup)
      throw DivergenceError("objective exceeded 1e10 * max(1, |F(x0)|) at iteration " +
                            std::to_string(k) + " (F = " + std::to_string(pr.F) + ")");
    if (trace.meta.f_star_known && pr.F < f_star - star_tol) ++trace.f_star_violations;

    const StepParams params = ops.params(k);
    TraceEntry e;
    e.k = k;
    e.F = pr.F;
    e.lyapunov = pr.F - f_star + ops.lyapunov_extra(params, pr);
    e.step_sq = pr.step_sq;
    e.residual_sq = pr.residual_sq;
    if (k > 0) {
      e.descent_slack = (prev_probe.F + ops.audit_potential(prev_params, prev_probe)) -
                        (pr.F + ops.audit_potential(params, pr)) -
                        ops.decrease_coeff(prev_params) * pr.step_sq;
    }
    e.beta = params.beta;
    e.gamma = params.gamma;
    e.block_gammas = params.block_gammas;
    e.block_step_sq = pr.block_step_sq;

    const bool last = k == cfg.max_iters;
    const bool converged = cfg.stop_tol > 0.0 && pr.residual_sq <= cfg.stop_tol * cfg.stop_tol;
    Vector x_next;
    if (!last && !converged) {
      auto [next, block] = ops.step(state, params, pr.grad);
      x_next = std::move(next);
      e.block = block;
      min_step = std::min(min_step, (x_next - state.x_curr).squaredNorm());
    }
    e.step_sq_min = std::isfinite(min_step) ? min_step : 0.0;

    if (k % cfg.record_every == 0 || last || converged) {
      if (cfg.keep_iterates) trace.iterates.push_back(state.x_curr);
      trace.entries.push_back(std::move(e));
    }
    if (last || converged) {
      trace.stopped_on_tolerance = converged;
      break;
    }
    state = IterateState{std::move(x_next), std::move(state.x_curr), k + 1};
    prev_params = params;
    prev_probe = std::move(pr);
  }
  trace.final_state = std::move(state);
  return trace;
}

void require_variant(const ParamSchedule& schedule, Variant v, const char* who) {
  validate(schedule);
  require(schedule.variant == v, std::string(who) + ": schedule variant mismatch");
}

}  // namespace

Vector pigd_step(const CompositeProblem& problem, const IterateState& state, double gamma,
                 double beta) {
  check_state(problem, state);
  require(gamma > 0.0, "pigd_step: gamma must be positive");
  check_beta(beta, 1.0, "pigd_step");
  return step_from_grad(problem, state, checked_grad(problem, state.x_curr), gamma, beta);
}

Vector cyclic_pigd_epoch(const CompositeProblem& problem, const IterateState& state,
                         const Vector& gammas, const Vector& betas) {
  check_state(problem, state);
  const auto& blocks = problem.blocks();
  const auto m = static_cast<Index>(blocks.count());
  require(gammas.size() == m && betas.size() == m, "cyclic_pigd_epoch: need one gamma and beta per block");
  for (Index i = 0; i < m; ++i) {
    require(gammas(i) > 0.0, "cyclic_pigd_epoch: gammas must be positive");
    check_beta(betas(i), 1.0, "cyclic_pigd_epoch");
  }
  Vector x = state.x_curr;
  for (std::size_t i = 0; i < blocks.count(); ++i) {
    const auto ii = static_cast<Index>(i);
    const Vector g = blocks.gather(checked_grad(problem, x), i);
    const Vector xi = blocks.gather(state.x_curr, i);
    const Vector v = xi - gammas(ii) * g + betas(ii) * (xi - blocks.gather(state.x_prev, i));
    blocks.scatter(x, i, prox_block(problem, i, v, gammas(ii)));
  }
  return x;
}

std::pair<Vector, std::size_t> stochastic_pigd_step(const CompositeProblem& problem,
                                                    const IterateState& state, double gamma,
                                                    double beta, Rng& rng) {
  check_state(problem, state);
  require(gamma > 0.0, "stochastic_pigd_step: gamma must be positive");
  check_beta(beta, std::sqrt(static_cast<double>(problem.block_count())), "stochastic_pigd_step");
  const auto i = static_cast<std::size_t>(rng.uniform_index(problem.block_count()));
  const Vector grad = checked_grad(problem, state.x_curr);
  return {block_update_from_grad(problem, state, grad, gamma, beta, i), i};
}

Trace run_pigd(const CompositeProblem& problem, const ParamSchedule& schedule, const Vector& x0,
               const RunConfig& cfg) {
  require_variant(schedule, Variant::full, "run_pigd");
  const double l = problem.lipschitz();
  const double c = schedule.c;
  VariantOps ops;
  ops.params = [&](std::size_t k) {
    StepParams p;
    p.beta = beta_at(schedule, k);
    p.gamma = gamma_full(p.beta, c, l);
    return p;
  };
  ops.lyapunov_extra = [&](const StepParams& p, const Probe& pr) {
    return delta_coeff(p.gamma, l) * pr.step_sq;
  };
  ops.audit_potential = [](const StepParams& p, const Probe& pr) {
    return p.beta / (2.0 * p.gamma) * pr.step_sq;
  };
  ops.decrease_coeff = [&](const StepParams& p) { return (1.0 - p.beta) / p.gamma - l / 2.0; };
  ops.step = [&](const IterateState& s, const StepParams& p, const Vector& grad) {
    return std::pair<Vector, std::size_t>{step_from_grad(problem, s, grad, p.gamma, p.beta), 0};
  };
  TraceMeta meta;
  meta.variant = Variant::full;
  meta.c = c;
  return drive(problem, x0, cfg, std::move(meta), ops);
}

Trace run_cyclic(const CompositeProblem& problem, const ParamSchedule& schedule, const Vector& x0,
                 const RunConfig& cfg) {
  require_variant(schedule, Variant::cyclic, "run_cyclic");
  const Vector& li = problem.block_lipschitz();
  const double l_min = problem.min_block_lipschitz();
  const double c = schedule.c;
  VariantOps ops;
  ops.params = [&](std::size_t k) {
    StepParams p;
    p.beta = beta_at(schedule, k);
    p.block_gammas.resize(li.size());
    for (Index i = 0; i < li.size(); ++i) p.block_gammas(i) = gamma_full(p.beta, c, li(i));
    // Largest block stepsize, for display only.
    p.gamma = p.block_gammas.maxCoeff();
    return p;
  };
  ops.lyapunov_extra = [&](const StepParams& p, const Probe& pr) {
    double s = 0.0;
    for (Index i = 0; i < li.size(); ++i)
      s += delta_coeff(p.block_gammas(i), li(i)) * pr.block_step_sq(i);
    return s;
  };
  ops.audit_potential = [&](const StepParams& p, const Probe& pr) {
    double s = 0.0;
    for (Index i = 0; i < li.size(); ++i) s += p.beta / (2.0 * p.block_gammas(i)) * pr.block_step_sq(i);
    return s;
  };
  ops.decrease_coeff = [&](const StepParams&) { return (1.0 - c) * l_min / (2.0 * c); };
  ops.step = [&](const IterateState& s, const StepParams& p, const Vector&) {
    const Vector betas = Vector::Constant(li.size(), p.beta);
    return std::pair<Vector, std::size_t>{cyclic_pigd_epoch(problem, s, p.block_gammas, betas), 0};
  };
  TraceMeta meta;
  meta.variant = Variant::cyclic;
  meta.c = c;
  return drive(problem, x0, cfg, std::move(meta), ops);
}

Trace run_stochastic(const CompositeProblem& problem, const ParamSchedule& schedule,
                     const Vector& x0, const RunConfig& cfg) {
  require_variant(schedule, Variant::stochastic, "run_stochastic");
  require(schedule.m == problem.block_count(), "run_stochastic: schedule.m must equal the block count");
  const double l = problem.lipschitz();
  const double c = schedule.c;
  const std::size_t m = problem.block_count();
  const double sqrt_m = std::sqrt(static_cast<double>(m));

  StepParams fixed;
  const bool linear = schedule.stochastic_regime == StochasticRegime::linear;
  if (linear) {
    if (!problem.nu()) throw UnsupportedOracle("run_stochastic: linear regime needs nu on the problem");
    fixed.gamma = schedule.gamma0_fraction * gamma0_root(m, *problem.nu(), l);
    fixed.beta = linear_stochastic_beta(fixed.gamma, *problem.nu(), m);
  }

  Rng rng(cfg.seed);
  VariantOps ops;
  ops.params = [&](std::size_t k) {
    if (linear) return fixed;
    StepParams p;
    p.beta = beta_at(schedule, k);
    p.gamma = gamma_stochastic(p.beta, c, l, m);
    return p;
  };
  ops.audit_potential = [&](const StepParams& p, const Probe& pr) {
    return p.beta / (2.0 * sqrt_m * p.gamma) * pr.step_sq;
  };
  ops.lyapunov_extra = ops.audit_potential;
  ops.decrease_coeff = [&](const StepParams& p) { return (1.0 - p.beta / sqrt_m) / p.gamma - l / 2.0; };
  ops.step = [&](const IterateState& s, const StepParams& p, const Vector& grad) {
    const auto i = static_cast<std::size_t>(rng.uniform_index(m));
    return std::pair<Vector, std::size_t>{block_update_from_grad(problem, s, grad, p.gamma, p.beta, i), i};
  };
  TraceMeta meta;
  meta.variant = Variant::stochastic;
  meta.c = c;
  return drive(problem, x0, cfg, std::move(meta), ops);
}

Trace run(const CompositeProblem& problem, const ParamSchedule& schedule, const Vector& x0,
          const RunConfig& cfg) {
  switch (schedule.variant) {
    case Variant::full: return run_pigd(problem, schedule, x0, cfg);
    case Variant::cyclic: return run_cyclic(problem, schedule, x0, cfg);
    case Variant::stochastic: return run_stochastic(problem, schedule, x0, cfg);
  }
  throw ContractViolation("run: unknown variant");
}

}  // namespace pigd
