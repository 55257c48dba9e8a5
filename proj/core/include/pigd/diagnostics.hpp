#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "pigd/problem.hpp"
#include "pigd/solvers.hpp"

namespace pigd {

/// F + δ‖Δ‖² - F*.
double lyapunov_xi(double F_val, double step_sq, double delta, double f_star);

/// x - prox_{γg}(x - γ∇f(x)). Vanishes exactly at minimizers of F.
Vector residual_S(const CompositeProblem& problem, const Vector& x, double gamma);

/// Most negative descent_slack over consecutive recorded pairs (0 if none is
/// negative). The slack column already holds the sufficient-decrease form for full runs
/// and the per-epoch form for cyclic runs; pairs that are not one iteration
/// apart are skipped. Throws ContractViolation on fewer than 2 entries.
double descent_audit(const Trace& trace);

/// Largest increase ξ_{k+1} - ξ_k across consecutive entries, divided by
/// 1 + |F(x^0)|. Nonpositive for a monotone Lyapunov column.
double lyapunov_increase(const Trace& trace);

struct AuditResult {
  double max_violation = 0.0;  // most negative normalized slack, 0 if none
  std::size_t checked = 0;     // number of steps audited
};

/// Which second factor the cyclic squared-Lyapunov audit multiplies by.
///  literal: 3‖x^{k+1} - x̄^{k+1}‖² + ‖x^{k-1} - x^k‖² as stated.
///  derived: 3‖x^{k+1} - x̄^{k+1}‖² + ‖x^{k+1} - x^k‖² as the derivation produces.
enum class CyclicFactor { literal, derived };

/// Audits ξ_{k+1}² <= ε_k (ξ_k - ξ_{k+1}) (2‖x^{k+1} - x̄^{k+1}‖² + ‖x^{k+1} - x^k‖²)
/// for full runs, or the block form with ε̂_k for cyclic runs. Slack is
/// divided by (1 + |F(x^0)|)². Needs iterates for every iteration and a
/// solution projection (UnsupportedOracle otherwise).
AuditResult lemma5_audit(const Trace& trace, const CompositeProblem& problem,
                         CyclicFactor factor = CyclicFactor::literal);

/// ε_k for entry j -> j+1 of a full trace (γ_k from entry j, δ_{k+1} from j+1).
double trace_epsilon(const Trace& trace, std::size_t j);

/// ε̂_k for entry j -> j+1 of a cyclic trace.
double trace_epsilon_cyclic(const Trace& trace, std::size_t j);

struct RatioAudit {
  double max_excess = 0.0;  // max over audited steps of ξ_{k+1}/ξ_k - ω_k, 0 if none
  double ell = 0.0;         // final running max of ε_k(1/δ_k + 2/ν)
  double omega = 0.0;       // 2ℓ/(√(ℓ²+4ℓ) + ℓ) for the final ℓ
  std::size_t checked = 0;
};

/// Per-step check of ξ_{k+1}/ξ_k <= 2ℓ/(√(ℓ²+4ℓ)+ℓ) with ℓ the running max of
/// ε_k(1/δ_k + 2/ν). Steps with ξ_k below floor·(1 + |F*|) are skipped since
/// the ratio is rounding noise there. Full traces only.
RatioAudit linear_ratio_audit(const Trace& trace, double nu, double floor = 1e-8);

/// 2ℓ/(√(ℓ²+4ℓ)+ℓ).
double omega_from_ell(double ell);

enum class RateModel { sublinear_power, geometric };

struct RateEstimate {
  RateModel model = RateModel::sublinear_power;
  double exponent_or_ratio = 0.0;
  double fit_residual = 0.0;  // RMS residual in log space
  std::pair<double, double> window{0.0, 0.0};
  std::size_t points = 0;
};

struct FitOptions {
  double burn_in_fraction = 0.1;  // drop k < burn_in_fraction * k_max
  std::optional<std::pair<double, double>> window;  // explicit [k_lo, k_hi], overrides burn-in
};

using Series = std::vector<std::pair<double, double>>;  // (k, value)

/// Least-squares fit of log(value) against log(k) (power) or k (geometric).
/// Needs >= 10 points in the window and strictly positive values.
RateEstimate fit_rate(const Series& series, RateModel model, const FitOptions& opts = {});

/// Prefix of the series ending before the first value < floor.
Series truncate_below(const Series& series, double floor);

std::vector<double> running_min(const std::vector<double>& series);

/// Series of one column of a trace, e.g. column(t, &TraceEntry::lyapunov).
Series column(const Trace& trace, double TraceEntry::*field);

/// Entrywise mean of one column over traces with identical k sequences.
Series seed_mean(const std::vector<Trace>& traces, double TraceEntry::*field);

/// Seed-mean of the stochastic descent slack at each k >= 1, divided by
/// 1 + |mean F(x^0)|; returns the minimum (0 if no entry is negative).
double expectation_audit(const std::vector<Trace>& traces);

/// max_k (k·v_k) / (k_lo·v_{k_lo}) over k in [k_lo, k_hi].
double k_times_bound_ratio(const Series& series, double k_lo, double k_hi);

/// Largest (k+1)·v_{k+1} - k·v_k over the points in [k_lo, k_hi], divided by
/// the first k·v_k in range. Nonpositive when k·v is non-increasing there.
double k_times_increase(const Series& series, double k_lo, double k_hi);

/// With C = v(k_ref)/ρ^{k_ref}, returns max_{k >= k_ref} v_k / (C ρ^k).
double geometric_envelope_ratio(const Series& series, double rho, double k_ref);

}  // namespace pigd
