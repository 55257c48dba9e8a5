#pragma once

#include <cstddef>
#include <vector>

#include "pigd/problem.hpp"

namespace pigd {

struct OdeSample {
  double t = 0.0;
  Vector x;
  Vector v;
  Vector a;
  double xi_f = 0.0;         // f(x) + ½‖v‖² - min f
  double accel_ratio = 0.0;  // ‖a‖/‖v‖, +inf when v = 0
};

struct OdeTrace {
  std::vector<OdeSample> samples;
  double alpha = 0.0;
  double step_h = 0.0;
};

/// Integrates ẍ + αẋ + ∇f(x) = 0 as a first-order system in (x, v) with
/// classical RK4, sampling every step. The problem must have g ≡ 0 and carry
/// F* (used as min f). Requires h <= 0.1/√L. Throws NumericalError naming t
/// when the state stops being finite.
OdeTrace simulate_heavy_ball(const CompositeProblem& problem, const Vector& x0, const Vector& v0,
                             double alpha, double h, double t_end);

struct OdeReport {
  double max_xi_increase = 0.0;      // largest forward difference of ξ_f, 0 if none positive
  double radius = 0.0;               // R = sup_t max{(α+θ)‖x - x*‖, ‖v‖/2}
  double constraint_violation = 0.0; // fraction of samples with accel_ratio > θ
  double bound_min_slack = 0.0;      // min_t of 1/(αt/R² + 1/ξ_f(0)) - ξ_f(t)
  bool bound_holds = true;
  double literal_min_slack = 0.0;    // same with "+ ξ_f(0)" in the denominator
  bool literal_holds = true;
};

/// Audits a trajectory against the continuous-time Lyapunov analysis. The
/// bound checks allow a slack of -1e-12·(1 + ξ_f(0)).
OdeReport ode_audit(const OdeTrace& trace, double theta, const Vector& x_star);

}  // namespace pigd
