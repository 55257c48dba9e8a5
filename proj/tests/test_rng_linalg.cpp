#include <doctest.h>

#include <Eigen/SVD>

#include <cmath>
#include <random>
#include <vector>

#include "support.hpp"

using namespace pigd;

TEST_CASE("rng streams are reproducible and follow mt19937_64") {
  Rng a(42);
  Rng b(42);
  std::mt19937_64 ref(42);
  for (int i = 0; i < 100; ++i) {
    const auto w = a.next_u64();
    CHECK(w == b.next_u64());
    CHECK(w == ref());
  }
}

TEST_CASE("uniform01 uses the top 53 bits") {
  Rng a(9);
  std::mt19937_64 ref(9);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform01();
    CHECK(u == static_cast<double>(ref() >> 11) / 9007199254740992.0);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("uniform_index is in range and roughly uniform") {
  Rng rng(1);
  std::vector<int> counts(7, 0);
  const int draws = 70000;
  for (int i = 0; i < draws; ++i) {
    const auto j = rng.uniform_index(7);
    REQUIRE(j < 7);
    ++counts[j];
  }
  for (int c : counts) CHECK(std::abs(c - draws / 7) < 5 * std::sqrt(draws / 7.0));
  CHECK(rng.uniform_index(1) == 0);
  CHECK_THROWS_AS(rng.uniform_index(0), ContractViolation);
}

TEST_CASE("uniform_index maps accepted words by modulo") {
  // For n a power of two there is no rejection, so the draw is w % n exactly.
  Rng a(77);
  std::mt19937_64 ref(77);
  for (int i = 0; i < 100; ++i) CHECK(a.uniform_index(8) == ref() % 8);
}

TEST_CASE("normal draws have unit variance") {
  Rng rng(2);
  double s = 0.0;
  double s2 = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    s += z;
    s2 += z * z;
  }
  CHECK(std::abs(s / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
}

TEST_CASE("power iteration matches the SVD") {
  Rng rng(3);
  const Matrix a = gaussian_matrix(40, 15, rng);
  const auto r = spectral_norm_sq(a);
  CHECK(r.converged);
  Eigen::JacobiSVD<Matrix> svd(a);
  const double s = svd.singularValues()(0);
  CHECK(std::abs(r.eigenvalue - s * s) <= 1e-10 * s * s);

  const Matrix q = a.transpose() * a;
  const auto e = largest_eigenvalue_psd(q);
  CHECK(std::abs(e.eigenvalue - s * s) <= 1e-10 * s * s);
}

TEST_CASE("random_orthogonal is orthogonal and seeded") {
  Rng a(4);
  Rng b(4);
  const Matrix q = random_orthogonal(12, a);
  CHECK((q.transpose() * q - Matrix::Identity(12, 12)).norm() < 1e-12);
  CHECK(q == random_orthogonal(12, b));
}
