#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace pigd;

namespace {

CompositeProblem zero_function(Index n) {
  ProblemParts parts;
  parts.smooth = std::make_shared<CallableSmooth>(
      n, [](const Vector&) { return 0.0; }, [n](const Vector&) { return Vector::Zero(n); });
  parts.blocks = BlockPartition::single(n);
  parts.block_terms = {prox::Zero{}};
  parts.lipschitz = 1.0;
  parts.block_lipschitz = Vector::Ones(1);
  parts.f_star = 0.0;
  return CompositeProblem(std::move(parts));
}

CompositeProblem half_square() { return testing_support::scalar_half_square().with_f_star(0.0); }

}  // namespace

TEST_CASE("f = 0 gives exponentially damped velocity") {
  const OdeTrace t = simulate_heavy_ball(zero_function(2), Vector::Ones(2), Vector::Constant(2, 2.0), 1.0, 1e-3, 1.0);
  const OdeSample& last = t.samples.back();
  CHECK(last.t == doctest::Approx(1.0));
  CHECK(std::abs(last.v(0) - 2.0 * std::exp(-1.0)) < 1e-12);
  CHECK(std::abs(last.x(1) - (1.0 + 2.0 * (1.0 - std::exp(-1.0)))) < 1e-12);
  CHECK(last.accel_ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("damped oscillator matches the closed form") {
  const OdeTrace t = simulate_heavy_ball(half_square(), Vector::Ones(1), Vector::Ones(1), 1.0, 1e-3, 5.0);
  const double w = std::sqrt(3.0) / 2.0;
  double worst = 0.0;
  for (const auto& s : t.samples) {
    const double exact = std::exp(-s.t / 2.0) * (std::cos(w * s.t) + std::sqrt(3.0) * std::sin(w * s.t));
    worst = std::max(worst, std::abs(s.x(0) - exact));
  }
  CHECK(worst < 1e-10);
  CHECK(t.samples.front().xi_f == 1.0);
}

TEST_CASE("equilibrium stays at rest") {
  const OdeTrace t = simulate_heavy_ball(half_square(), Vector::Zero(1), Vector::Zero(1), 2.0, 1e-2, 1.0);
  for (const auto& s : t.samples) {
    CHECK(s.x(0) == 0.0);
    CHECK(s.xi_f == 0.0);
  }
  const OdeReport r = ode_audit(t, 1.0, Vector::Zero(1));
  CHECK(r.max_xi_increase == 0.0);
  CHECK(r.bound_holds);
}

TEST_CASE("energy decreases at rate alpha |v|^2") {
  const CompositeProblem p = make_instance(testing_support::quadratic_spec(4, 1, 10.0, 3));
  const double alpha = 0.7;
  const double h = 1e-3;
  const OdeTrace t = simulate_heavy_ball(p, Vector::Ones(4), Vector::Zero(4), alpha, h, 3.0);
  double dissipated = 0.0;
  for (std::size_t i = 1; i < t.samples.size(); ++i)
    dissipated += 0.5 * h * alpha * (t.samples[i - 1].v.squaredNorm() + t.samples[i].v.squaredNorm());
  const double change = t.samples.front().xi_f - t.samples.back().xi_f;
  CHECK(std::abs(change - dissipated) < 1e-6);
  CHECK(ode_audit(t, 1.0, p.project_to_solutions(Vector::Zero(4))).max_xi_increase <= 1e-14);
}

TEST_CASE("ode_audit flags the acceleration constraint") {
  const OdeTrace t = simulate_heavy_ball(half_square(), Vector::Ones(1), Vector::Ones(1), 1.0, 1e-3, 5.0);
  const OdeReport loose = ode_audit(t, 1e6, Vector::Zero(1));
  CHECK(loose.constraint_violation == 0.0);
  const OdeReport tight = ode_audit(t, 1e-3, Vector::Zero(1));
  CHECK(tight.constraint_violation > 0.5);
  CHECK(loose.radius > 0.0);
}

TEST_CASE("simulate_heavy_ball preconditions") {
  const CompositeProblem p = half_square();
  CHECK_THROWS_AS(simulate_heavy_ball(p, Vector::Ones(1), Vector::Ones(1), 1.0, 0.2, 1.0), ContractViolation);
  CHECK_THROWS_AS(simulate_heavy_ball(p, Vector::Ones(1), Vector::Ones(1), 0.0, 1e-3, 1.0), ContractViolation);
  const CompositeProblem l1 =
      testing_support::quadratic_problem(Matrix::Identity(1, 1), Vector::Zero(1), 1, {prox::L1{1.0}}).with_f_star(0.0);
  CHECK_THROWS_AS(simulate_heavy_ball(l1, Vector::Ones(1), Vector::Ones(1), 1.0, 1e-3, 1.0), ContractViolation);
  CHECK_THROWS_AS(simulate_heavy_ball(testing_support::scalar_half_square(), Vector::Ones(1), Vector::Ones(1), 1.0, 1e-3, 1.0),
                  ContractViolation);
}
