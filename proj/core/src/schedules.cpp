#include "pigd/schedules.hpp"

#include <algorithm>
#include <cmath>

#include "pigd/types.hpp"

namespace pigd {

void validate(const ParamSchedule& s) {
  require(s.c > 0.0 && s.c < 1.0, "schedule: c must lie in (0, 1)");
  require(s.m >= 1, "schedule: m must be positive");
  if (s.beta_rule == BetaRule::constant)
    require(s.beta0 >= 0.0 && s.beta0 < 1.0, "schedule: constant beta must lie in [0, 1)");
  else
    require(s.theta > 1.0, "schedule: diminishing rule needs theta > 1");
  if (s.variant == Variant::stochastic && s.stochastic_regime == StochasticRegime::linear)
    require(s.gamma0_fraction > 0.0 && s.gamma0_fraction < 1.0,
            "schedule: gamma0_fraction must lie in (0, 1)");
}

double beta_at(const ParamSchedule& s, std::size_t k) {
  if (s.beta_rule == BetaRule::constant) return s.beta0;
  return std::pow(static_cast<double>(k) + 2.0, -s.theta);
}

double gamma_full(double beta, double c, double lipschitz) {
  require(beta >= 0.0 && beta < 1.0, "gamma_full: beta must lie in [0, 1)");
  require(c > 0.0 && c < 1.0, "gamma_full: c must lie in (0, 1)");
  require(lipschitz > 0.0, "gamma_full: L must be positive");
  return 2.0 * (1.0 - beta) * c / lipschitz;
}

double gamma_stochastic(double beta, double c, double lipschitz, std::size_t m) {
  require(m >= 1, "gamma_stochastic: m must be positive");
  const double root_m = std::sqrt(static_cast<double>(m));
  require(beta >= 0.0 && beta < root_m, "gamma_stochastic: beta must lie in [0, sqrt(m))");
  require(c > 0.0 && c < 1.0, "gamma_stochastic: c must lie in (0, 1)");
  require(lipschitz > 0.0, "gamma_stochastic: L must be positive");
  return 2.0 * (1.0 - beta / root_m) * c / lipschitz;
}

double delta_coeff(double gamma, double lipschitz) {
  require(gamma > 0.0, "delta_coeff: gamma must be positive");
  return 0.5 * (1.0 / gamma - 0.5 * lipschitz);
}

double epsilon_coeff(double gamma, double delta_next, double c, double lipschitz) {
  require(gamma > 0.0, "epsilon_coeff: gamma must be positive");
  require(c > 0.0 && c < 1.0, "epsilon_coeff: c must lie in (0, 1)");
  const double scale = 4.0 * c / ((1.0 - c) * lipschitz);
  return scale * delta_next * delta_next + scale / (gamma * gamma);
}

double gamma0_root(std::size_t m, double nu, double lipschitz) {
  require(m >= 1, "gamma0_root: m must be positive");
  require(nu > 0.0, "gamma0_root: nu must be positive");
  require(lipschitz > 0.0, "gamma0_root: L must be positive");
  const double md = static_cast<double>(m);
  const double a = std::min(nu, 1.0) * nu / (8.0 * md * md * md);
  const double b = lipschitz + nu / (2.0 * md) - nu / (4.0 * md * md);
  // (-b + sqrt(b² + 4a)) / (2a) rewritten as 2 / (b + sqrt(b² + 4a)); b > 0.
  return 2.0 / (b + std::sqrt(b * b + 4.0 * a));
}

double linear_stochastic_beta(double gamma, double nu, std::size_t m) {
  require(gamma > 0.0, "linear_stochastic_beta: gamma must be positive");
  require(m >= 1, "linear_stochastic_beta: m must be positive");
  return gamma * nu / (4.0 * static_cast<double>(m));
}

}  // namespace pigd
