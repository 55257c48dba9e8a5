#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "pigd/problem.hpp"
#include "pigd/rng.hpp"
#include "pigd/schedules.hpp"

namespace pigd {

struct RunConfig {
  std::size_t max_iters = 1000;
  std::size_t record_every = 1;
  double stop_tol = 0.0;  // stop once ‖S_{1/L}(x^k)‖ <= stop_tol; 0 disables
  std::uint64_t seed = 0;  // stochastic variant only
  bool keep_iterates = false;  // store x^k for every recorded entry
};

void validate(const RunConfig& cfg);

/// One recorded iteration. Quantities refer to the iterate x^k and the
/// parameters (β_k, γ_k) that produce x^{k+1} from it.
struct TraceEntry {
  std::size_t k = 0;
  double F = 0.0;
  double lyapunov = 0.0;      // ξ_k (full), ξ̂_k (cyclic), F - F* + β/(2√m γ)‖Δ‖² (stochastic)
  double step_sq = 0.0;       // ‖x^k - x^{k-1}‖²
  double residual_sq = 0.0;   // ‖S_{1/L}(x^k)‖²
  double descent_slack = 0.0; // slack of the variant's descent inequality for k-1 -> k; 0 at k = 0
  double beta = 0.0;
  double gamma = 0.0;         // full and stochastic variants
  Vector block_gammas;        // cyclic: γ_{k,i}
  Vector block_step_sq;       // ‖x_i^k - x_i^{k-1}‖² per block
  double step_sq_min = 0.0;   // min_{0<=i<=k} ‖x^{i+1} - x^i‖²
  std::size_t block = 0;      // stochastic: block drawn for the step k -> k+1
};

struct TraceMeta {
  Variant variant = Variant::full;
  double lipschitz = 0.0;
  Vector block_lipschitz;
  double c = 0.0;
  std::size_t m = 1;
  double f_star = 0.0;        // offset used in the Lyapunov column
  bool f_star_known = false;
};

struct Trace {
  TraceMeta meta;
  std::vector<TraceEntry> entries;
  std::vector<Vector> iterates;  // parallel to entries when keep_iterates
  IterateState final_state;
  bool stopped_on_tolerance = false;
  std::size_t f_star_violations = 0;  // iterations with F(x^k) < F* - 1e-9(1+|F*|)
};

/// prox_{γg}(x^k - γ∇f(x^k) + β(x^k - x^{k-1})), prox applied blockwise.
Vector pigd_step(const CompositeProblem& problem, const IterateState& state, double gamma,
                 double beta);

/// One Gauss-Seidel sweep over the blocks: block i's gradient is evaluated at
/// (x_1^{k+1}, ..., x_{i-1}^{k+1}, x_i^k, ..., x_m^k).
Vector cyclic_pigd_epoch(const CompositeProblem& problem, const IterateState& state,
                         const Vector& gammas, const Vector& betas);

/// Draws i uniformly from the blocks and updates that block only, using the
/// block gradient at the pre-step point x^k.
std::pair<Vector, std::size_t> stochastic_pigd_step(const CompositeProblem& problem,
                                                    const IterateState& state, double gamma,
                                                    double beta, Rng& rng);

Trace run_pigd(const CompositeProblem& problem, const ParamSchedule& schedule, const Vector& x0,
               const RunConfig& cfg);
Trace run_cyclic(const CompositeProblem& problem, const ParamSchedule& schedule, const Vector& x0,
                 const RunConfig& cfg);
Trace run_stochastic(const CompositeProblem& problem, const ParamSchedule& schedule,
                     const Vector& x0, const RunConfig& cfg);

/// Dispatches on schedule.variant.
Trace run(const CompositeProblem& problem, const ParamSchedule& schedule, const Vector& x0,
          const RunConfig& cfg);

}  // namespace pigd
