#include <doctest.h>

#include <filesystem>

#include "support.hpp"

using namespace pigd;

TEST_CASE("solve_reference on a square least-squares problem matches A^{-1} b") {
  Rng rng(3);
  const Matrix a = gaussian_matrix(10, 10, rng) + 4.0 * Matrix::Identity(10, 10);
  const Vector b = gaussian_vector(10, rng);
  const CompositeProblem p = testing_support::lasso_problem(a, b, 0.0, 1);
  const ReferenceSolution sol = solve_reference(p, 1e-12);
  CHECK(sol.converged);
  const Vector exact = a.partialPivLu().solve(b);
  CHECK((sol.x_star - exact).norm() < 1e-8);
  CHECK(sol.f_star == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("solve_reference on a one-dimensional lasso") {
  // ½(2x - 3)² + |x| has gradient 4x - 6 + 1 = 0 at x = 5/4.
  const CompositeProblem p = testing_support::lasso_problem(Matrix::Constant(1, 1, 2.0), Vector::Constant(1, 3.0), 1.0, 1);
  const ReferenceSolution sol = solve_reference(p, 1e-13);
  CHECK(sol.x_star(0) == doctest::Approx(1.25).epsilon(1e-12));
  CHECK(sol.f_star == doctest::Approx(0.125 + 1.25).epsilon(1e-12));
}

TEST_CASE("solve_reference respects the tolerance and reports failure") {
  const CompositeProblem p = make_instance(testing_support::lasso_spec(30, 60, 0.05, 1, 5));
  for (double tol : {1e-6, 5e-7, 2.5e-7}) {
    const ReferenceSolution sol = solve_reference(p, tol);
    CHECK(sol.converged);
    CHECK(sol.residual <= tol);
    CHECK(residual_norm(p, sol.x_star, 1.0 / p.lipschitz()) == doctest::Approx(sol.residual));
  }
  const ReferenceSolution cut = solve_reference(p, 1e-14, 3);
  CHECK_FALSE(cut.converged);
  CHECK(cut.iterations_used <= 3);
}

TEST_CASE("fnv1a64 known values") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("ReferenceCache round trip") {
  const auto dir = std::filesystem::temp_directory_path() / "pigd_cache_test";
  std::filesystem::remove_all(dir);
  const ReferenceCache cache(dir);
  const std::string key = "unit-test-key";
  CHECK_FALSE(cache.load(key).has_value());
  CHECK(cache.path_for(key).filename().string().size() == 16 + 5);
  ReferenceSolution sol;
  sol.x_star = Vector::LinSpaced(5, -1.0, 1.0 / 3.0);
  sol.f_star = 0.1 + 0.2;
  sol.residual = 1e-13;
  sol.iterations_used = 42;
  sol.converged = true;
  cache.store(key, sol);
  const auto back = cache.load(key);
  REQUIRE(back.has_value());
  CHECK(back->x_star == sol.x_star);
  CHECK(back->f_star == sol.f_star);
  CHECK(back->residual == sol.residual);
  CHECK(back->iterations_used == 42);
  CHECK(back->converged);
  CHECK_FALSE(cache.load("another-key").has_value());

  const CompositeProblem p = make_instance(testing_support::lasso_spec(6, 20, 0.1, 1, 2));
  const ReferenceSolution first = cache.get_or_solve("lasso-6", p);
  CHECK(std::filesystem::exists(cache.path_for("lasso-6")));
  const ReferenceSolution second = cache.get_or_solve("lasso-6", p);
  CHECK(first.x_star == second.x_star);
  CHECK(first.f_star == second.f_star);
  std::filesystem::remove_all(dir);
}
