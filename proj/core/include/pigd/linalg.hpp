#pragma once

#include "pigd/rng.hpp"
#include "pigd/types.hpp"

namespace pigd {

struct PowerIterationResult {
  double eigenvalue = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Largest eigenvalue of the symmetric positive semidefinite operator
/// v -> Aᵀ(A v), i.e. ‖A‖₂². Stops when the Rayleigh quotient changes by less
/// than rel_tol relative. The start vector is fixed (all ones plus a
/// deterministic perturbation) so results are reproducible.
PowerIterationResult spectral_norm_sq(const Matrix& a, double rel_tol = 1e-12,
                                      int max_iters = 100000);

/// Largest eigenvalue of a symmetric positive semidefinite matrix.
PowerIterationResult largest_eigenvalue_psd(const Matrix& s, double rel_tol = 1e-12,
                                            int max_iters = 100000);

/// Haar-distributed orthogonal matrix from the QR factorization of a Gaussian
/// matrix, with the sign convention diag(R) > 0.
Matrix random_orthogonal(Index n, Rng& rng);

Matrix gaussian_matrix(Index rows, Index cols, Rng& rng);
Vector gaussian_vector(Index n, Rng& rng);

}  // namespace pigd
