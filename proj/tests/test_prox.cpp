#include <doctest.h>

#include <cmath>

#include "support.hpp"

using namespace pigd;
using testing_support::grid_argmin;

TEST_CASE("soft_threshold closed form") {
  Vector v(3);
  v << 3.0, -0.5, -3.0;
  const Vector out = soft_threshold(v, 1.0);
  CHECK(out(0) == 2.0);
  CHECK(out(1) == 0.0);
  CHECK(out(2) == -2.0);
}

TEST_CASE("soft_threshold with tau 0 is the identity") {
  Rng rng(3);
  const Vector v = gaussian_vector(20, rng);
  CHECK(soft_threshold(v, 0.0) == v);
}

TEST_CASE("soft_threshold rejects negative tau") {
  CHECK_THROWS_AS(soft_threshold(Vector::Ones(2), -0.1), ContractViolation);
}

TEST_CASE("soft_threshold matches grid search on random scalars") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double v = 4.0 * rng.normal();
    const double tau = 2.0 * rng.uniform01();
    const double z = grid_argmin([&](double s) { return 0.5 * (s - v) * (s - v) + tau * std::abs(s); },
                                 -15.0, 15.0);
    Vector vv(1);
    vv << v;
    CHECK(std::abs(soft_threshold(vv, tau)(0) - z) < 1e-4);
  }
}

TEST_CASE("project_box clamps and is idempotent") {
  Vector v(2);
  v << 2.0, -2.0;
  const Vector lo = -Vector::Ones(2);
  const Vector hi = Vector::Ones(2);
  const Vector p = project_box(v, lo, hi);
  CHECK(p(0) == 1.0);
  CHECK(p(1) == -1.0);

  Vector inside(2);
  inside << 0.25, -0.75;
  CHECK(project_box(inside, lo, hi) == inside);

  Rng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const Vector r = 3.0 * gaussian_vector(2, rng);
    const Vector once = project_box(r, lo, hi);
    CHECK(project_box(once, lo, hi) == once);
  }
}

TEST_CASE("project_box rejects an empty box") {
  Vector lo(2);
  Vector hi(2);
  lo << 0.0, 1.0;
  hi << 1.0, 0.0;
  CHECK_THROWS_AS(project_box(Vector::Zero(2), lo, hi), ContractViolation);
}

TEST_CASE("group shrink formula and zero input") {
  Vector v(2);
  v << 3.0, 4.0;
  const Vector out = group_shrink(v, 1.0);
  CHECK(out(0) == doctest::Approx(3.0 * 0.8));
  CHECK(out(1) == doctest::Approx(4.0 * 0.8));
  CHECK(group_shrink(Vector::Zero(3), 1.0).isZero());
  CHECK(group_shrink(v, 5.0).isZero());
  CHECK(group_shrink(v, 6.0).isZero());
}

TEST_CASE("group prox matches 2-D grid search") {
  Rng rng(17);
  const double lambda = 0.7;
  const double gamma = 1.3;
  for (int trial = 0; trial < 5; ++trial) {
    const Vector v = 2.0 * gaussian_vector(2, rng);
    const Vector p = apply_prox(prox::GroupL2{lambda}, v, gamma);
    auto obj = [&](double a, double b) {
      const double da = a - v(0);
      const double db = b - v(1);
      return (da * da + db * db) / (2.0 * gamma) + lambda * std::sqrt(a * a + b * b);
    };
    double best = obj(p(0), p(1));
    bool beaten = false;
    const double r = 1e-3;
    for (int i = -50; i <= 50; ++i)
      for (int j = -50; j <= 50; ++j)
        if (obj(p(0) + r * i, p(1) + r * j) < best - 1e-12) beaten = true;
    CHECK_FALSE(beaten);
    // Coarse grid over a wide square recovers the same point to grid resolution.
    double ga = 0.0;
    double gb = 0.0;
    double gv = obj(0.0, 0.0);
    for (int i = -400; i <= 400; ++i)
      for (int j = -400; j <= 400; ++j) {
        const double a = 0.02 * i;
        const double b = 0.02 * j;
        const double val = obj(a, b);
        if (val < gv) {
          gv = val;
          ga = a;
          gb = b;
        }
      }
    CHECK(std::abs(ga - p(0)) <= 0.021);
    CHECK(std::abs(gb - p(1)) <= 0.021);
  }
}

TEST_CASE("every prox kind matches per-coordinate grid search") {
  Rng rng(23);
  const double gamma = 0.8;
  Vector lo(1);
  Vector hi(1);
  lo << -0.5;
  hi << 1.25;
  const std::vector<ProxKind> kinds = {prox::Zero{}, prox::L1{0.6}, prox::Box{lo, hi}, prox::GroupL2{0.4}};
  for (const auto& kind : kinds) {
    for (int trial = 0; trial < 20; ++trial) {
      Vector v(1);
      v << 3.0 * rng.normal();
      const double z = grid_argmin(
          [&](double s) {
            Vector sv(1);
            sv << s;
            const double g = evaluate(kind, sv);
            return std::isfinite(g) ? (s - v(0)) * (s - v(0)) / (2.0 * gamma) + g : 1e300;
          },
          -12.0, 12.0);
      CHECK(std::abs(apply_prox(kind, v, gamma)(0) - z) < 1e-4);
    }
  }
}

TEST_CASE("prox operators are firmly nonexpansive") {
  Rng rng(29);
  const Index n = 6;
  const Vector lo = -Vector::Ones(n);
  const Vector hi = 0.5 * Vector::Ones(n);
  const std::vector<ProxKind> kinds = {prox::Zero{}, prox::L1{0.3}, prox::Box{lo, hi}, prox::GroupL2{0.9}};
  for (const auto& kind : kinds) {
    for (int trial = 0; trial < 200; ++trial) {
      const Vector u = 2.0 * gaussian_vector(n, rng);
      const Vector v = 2.0 * gaussian_vector(n, rng);
      const Vector pu = apply_prox(kind, u, 0.7);
      const Vector pv = apply_prox(kind, v, 0.7);
      const double lhs = (pu - pv).squaredNorm();
      CHECK(lhs <= (pu - pv).dot(u - v) + 1e-12);
      CHECK((pu - pv).norm() <= (u - v).norm() + 1e-12);
    }
  }
}

TEST_CASE("apply_prox rejects nonpositive stepsizes and bad kinds") {
  CHECK_THROWS_AS(apply_prox(prox::L1{1.0}, Vector::Ones(2), 0.0), ContractViolation);
  CHECK_THROWS_AS(validate(prox::L1{-1.0}, 2), ContractViolation);
  CHECK_THROWS_AS(validate(prox::Box{Vector::Zero(3), Vector::Ones(3)}, 2), ContractViolation);
}

TEST_CASE("box indicator is infinite outside") {
  const prox::Box box{-Vector::Ones(2), Vector::Ones(2)};
  CHECK(evaluate(box, Vector::Zero(2)) == 0.0);
  CHECK(std::isinf(evaluate(box, 2.0 * Vector::Ones(2))));
}
