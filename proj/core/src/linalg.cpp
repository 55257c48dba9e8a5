#include "pigd/linalg.hpp"

#include <Eigen/QR>
#include <cmath>

namespace pigd {
namespace {

template <typename Apply>
PowerIterationResult power_iterate(Index n, Apply&& apply, double rel_tol, int max_iters) {
  require(n > 0, "power iteration: empty operator");
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = 1.0 + 0.01 * static_cast<double>(i % 7);
  v.normalize();

  PowerIterationResult out;
  double prev = 0.0;
  for (int it = 1; it <= max_iters; ++it) {
    Vector w = apply(v);
    const double rayleigh = v.dot(w);
    const double norm = w.norm();
    out.iterations = it;
    out.eigenvalue = rayleigh;
    if (norm == 0.0) {
      out.converged = true;
      return out;
    }
    if (it > 1 && std::abs(rayleigh - prev) <= rel_tol * std::abs(rayleigh)) {
      out.converged = true;
      return out;
    }
    prev = rayleigh;
    v = w / norm;
  }
  return out;
}

}  // namespace

PowerIterationResult spectral_norm_sq(const Matrix& a, double rel_tol, int max_iters) {
  return power_iterate(
      a.cols(), [&a](const Vector& v) -> Vector { return a.transpose() * (a * v); }, rel_tol,
      max_iters);
}

PowerIterationResult largest_eigenvalue_psd(const Matrix& s, double rel_tol, int max_iters) {
  require(s.rows() == s.cols(), "largest_eigenvalue_psd: matrix must be square");
  return power_iterate(
      s.rows(), [&s](const Vector& v) -> Vector { return s * v; }, rel_tol, max_iters);
}

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng) {
  Matrix m(rows, cols);
  // Row-major fill order so the stream layout is independent of Eigen storage.
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = rng.normal();
  return m;
}

Vector gaussian_vector(Index n, Rng& rng) {
  Vector v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.normal();
  return v;
}

Matrix random_orthogonal(Index n, Rng& rng) {
  const Matrix g = gaussian_matrix(n, n, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index j = 0; j < n; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace pigd
