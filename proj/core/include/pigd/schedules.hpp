#pragma once

#include <cstddef>

namespace pigd {

enum class Variant { full, cyclic, stochastic };

enum class BetaRule { constant, diminishing };

/// How the stochastic variant picks (γ, β).
///  - descent: γ_k from gamma_stochastic with the schedule's β_k.
///  - linear:  fixed γ = gamma0_fraction * γ₀ and β = γν/(4m).
enum class StochasticRegime { descent, linear };

struct ParamSchedule {
  BetaRule beta_rule = BetaRule::constant;
  double beta0 = 0.5;  // constant rule
  double theta = 1.5;  // diminishing rule, θ > 1
  double c = 0.9;      // contraction factor in (0, 1)
  Variant variant = Variant::full;
  std::size_t m = 1;
  StochasticRegime stochastic_regime = StochasticRegime::descent;
  double gamma0_fraction = 0.9;  // linear regime only, in (0, 1)
};

/// Throws ContractViolation when the schedule breaks its invariants.
void validate(const ParamSchedule& schedule);

/// β_k: β₀ for the constant rule, 1/(k+2)^θ for the diminishing rule.
double beta_at(const ParamSchedule& schedule, std::size_t k);

/// 2(1-β)c/L. Also the per-block rule with L = L_i.
double gamma_full(double beta, double c, double lipschitz);

/// 2(1-β/√m)c/L, valid for 0 <= β < √m.
double gamma_stochastic(double beta, double c, double lipschitz, std::size_t m);

/// ½(1/γ - L/2).
double delta_coeff(double gamma, double lipschitz);

/// 4cδ²/((1-c)L) + 4c/((1-c)Lγ²), with δ = δ_{k+1} and γ = γ_k.
double epsilon_coeff(double gamma, double delta_next, double c, double lipschitz);

/// Positive root of (min{ν,1}ν/(8m³))γ² + (L + ν/(2m) - ν/(4m²))γ - 1 = 0.
double gamma0_root(std::size_t m, double nu, double lipschitz);

/// γν/(4m).
double linear_stochastic_beta(double gamma, double nu, std::size_t m);

}  // namespace pigd
