#include "pigd/ode.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>

namespace pigd {

namespace {

bool smooth_only(const CompositeProblem& problem) {
  for (std::size_t i = 0; i < problem.block_count(); ++i)
    if (!std::holds_alternative<prox::Zero>(problem.block_term(i))) return false;
  return true;
}

}  // namespace

OdeTrace simulate_heavy_ball(const CompositeProblem& problem, const Vector& x0, const Vector& v0,
                             double alpha, double h, double t_end) {
  require(smooth_only(problem), "simulate_heavy_ball: problem must have g = 0");
  require(problem.f_star().has_value(), "simulate_heavy_ball: problem must carry min f");
  require(x0.size() == problem.dim() && v0.size() == problem.dim(), "simulate_heavy_ball: dimension mismatch");
  require(alpha > 0.0, "simulate_heavy_ball: alpha must be positive");
  require(h > 0.0 && t_end > 0.0, "simulate_heavy_ball: h and t_end must be positive");
  require(h <= 0.1 / std::sqrt(problem.lipschitz()) * (1.0 + 1e-12),
          "simulate_heavy_ball: h must be <= 0.1/sqrt(L)");
  const double f_min = *problem.f_star();
  const auto steps = static_cast<std::size_t>(std::llround(t_end / h));
  require(steps >= 1, "simulate_heavy_ball: t_end shorter than one step");

  auto accel = [&](const Vector& x, const Vector& v) -> Vector { return -alpha * v - problem.smooth_grad(x); };
  auto sample = [&](double t, const Vector& x, const Vector& v) {
    OdeSample s;
    s.t = t;
    s.x = x;
    s.v = v;
    s.a = accel(x, v);
    s.xi_f = problem.smooth_value(x) + 0.5 * v.squaredNorm() - f_min;
    const double speed = v.norm();
    s.accel_ratio = speed > 0.0 ? s.a.norm() / speed : kInf;
    if (!s.x.allFinite() || !s.v.allFinite() || !s.a.allFinite() || !std::isfinite(s.xi_f))
      throw NumericalError("simulate_heavy_ball: state blew up at t = " + std::to_string(t));
    return s;
  };

  OdeTrace trace;
  trace.alpha = alpha;
  trace.step_h = h;
  trace.samples.reserve(steps + 1);
  Vector x = x0;
  Vector v = v0;
  trace.samples.push_back(sample(0.0, x, v));
  for (std::size_t i = 1; i <= steps; ++i) {
    const Vector k1x = v;
    const Vector k1v = accel(x, v);
    const Vector k2x = v + 0.5 * h * k1v;
    const Vector k2v = accel(x + 0.5 * h * k1x, k2x);
    const Vector k3x = v + 0.5 * h * k2v;
    const Vector k3v = accel(x + 0.5 * h * k2x, k3x);
    const Vector k4x = v + h * k3v;
    const Vector k4v = accel(x + h * k3x, k4x);
    x += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    trace.samples.push_back(sample(static_cast<double>(i) * h, x, v));
  }
  return trace;
}

OdeReport ode_audit(const OdeTrace& trace, double theta, const Vector& x_star) {
  require(!trace.samples.empty(), "ode_audit: empty trace");
  require(theta > 0.0, "ode_audit: theta must be positive");
  OdeReport r;
  const auto& s = trace.samples;
  const double alpha = trace.alpha;
  std::size_t violations = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    require(s[i].x.size() == x_star.size(), "ode_audit: x_star dimension mismatch");
    r.radius = std::max({r.radius, (alpha + theta) * (s[i].x - x_star).norm(), s[i].v.norm() / 2.0});
    if (s[i].accel_ratio > theta) ++violations;
    if (i + 1 < s.size()) r.max_xi_increase = std::max(r.max_xi_increase, s[i + 1].xi_f - s[i].xi_f);
  }
  r.constraint_violation = static_cast<double>(violations) / static_cast<double>(s.size());

  const double xi0 = s.front().xi_f;
  const double tol = -1e-12 * (1.0 + std::abs(xi0));
  r.bound_min_slack = kInf;
  r.literal_min_slack = kInf;
  for (const auto& p : s) {
    double bound = 0.0;
    double literal = 0.0;
    if (xi0 > 0.0 && r.radius > 0.0) {
      const double growth = alpha * p.t / (r.radius * r.radius);
      bound = 1.0 / (growth + 1.0 / xi0);
      literal = 1.0 / (growth + xi0);
    }
    r.bound_min_slack = std::min(r.bound_min_slack, bound - p.xi_f);
    r.literal_min_slack = std::min(r.literal_min_slack, literal - p.xi_f);
  }
  r.bound_holds = r.bound_min_slack >= tol;
  r.literal_holds = r.literal_min_slack >= tol;
  return r;
}

}  // namespace pigd
