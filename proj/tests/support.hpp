#pragma once

#include <Eigen/Eigenvalues>

#include <memory>
#include <vector>

#include <pigd/pigd.hpp>

namespace testing_support {

using pigd::Index;
using pigd::Matrix;
using pigd::Vector;

inline double max_eigenvalue(const Matrix& q) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(q, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

// f = ½(x - c)ᵀQ(x - c) over contiguous blocks, with exact L and L_i.
inline pigd::CompositeProblem quadratic_problem(const Matrix& q, const Vector& center, std::size_t m,
                                                std::vector<pigd::ProxKind> terms = {}) {
  pigd::ProblemParts parts;
  parts.blocks = pigd::BlockPartition::contiguous(q.rows(), m);
  if (terms.empty()) terms.assign(m, pigd::prox::Zero{});
  parts.block_terms = std::move(terms);
  parts.block_lipschitz.resize(static_cast<Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const auto& idx = parts.blocks.indices(i);
    parts.block_lipschitz(static_cast<Index>(i)) = max_eigenvalue(q(idx, idx));
  }
  parts.lipschitz = std::max(max_eigenvalue(q), parts.block_lipschitz.maxCoeff());
  parts.smooth = std::make_shared<pigd::QuadraticSmooth>(q, center, 0.0);
  return pigd::CompositeProblem(std::move(parts));
}

// ½x² in one dimension.
inline pigd::CompositeProblem scalar_half_square() {
  return quadratic_problem(Matrix::Identity(1, 1), Vector::Zero(1), 1);
}

// ½‖Ax - b‖² + λ‖x‖₁ over contiguous blocks.
inline pigd::CompositeProblem lasso_problem(const Matrix& a, const Vector& b, double lambda, std::size_t m) {
  pigd::ProblemParts parts;
  parts.blocks = pigd::BlockPartition::contiguous(a.cols(), m);
  parts.block_terms.assign(m, pigd::prox::L1{lambda});
  parts.lipschitz = max_eigenvalue(a.transpose() * a);
  parts.block_lipschitz.resize(static_cast<Index>(m));
  for (std::size_t i = 0; i < m; ++i) {
    const Matrix ai = a(Eigen::all, parts.blocks.indices(i));
    parts.block_lipschitz(static_cast<Index>(i)) = max_eigenvalue(ai.transpose() * ai);
  }
  parts.smooth = std::make_shared<pigd::LeastSquaresSmooth>(a, b);
  return pigd::CompositeProblem(std::move(parts));
}

inline pigd::InstanceSpec lasso_spec(Index n, Index rows, double lambda, std::size_t m, std::uint64_t seed,
                                     double conditioning = 1.0) {
  pigd::InstanceSpec s;
  s.kind = pigd::InstanceKind::lasso;
  s.n = n;
  s.rows = rows;
  s.reg_lambda = lambda;
  s.blocks = m;
  s.seed = seed;
  s.conditioning = conditioning;
  return s;
}

inline pigd::InstanceSpec quadratic_spec(Index n, std::size_t m, double conditioning, std::uint64_t seed) {
  pigd::InstanceSpec s;
  s.kind = pigd::InstanceKind::quadratic;
  s.n = n;
  s.blocks = m;
  s.seed = seed;
  s.conditioning = conditioning;
  return s;
}

inline pigd::InstanceSpec noncoercive_spec(Index n, Index rank_deficiency, double conditioning, std::uint64_t seed) {
  pigd::InstanceSpec s;
  s.kind = pigd::InstanceKind::noncoercive_quadratic;
  s.n = n;
  s.rank_deficiency = rank_deficiency;
  s.conditioning = conditioning;
  s.seed = seed;
  return s;
}

// Minimizes φ over [lo, hi] on a uniform grid, then refines twice around the best point.
template <class Phi>
double grid_argmin(Phi phi, double lo, double hi, int points = 20001) {
  double best = lo;
  for (int pass = 0; pass < 3; ++pass) {
    const double step = (hi - lo) / (points - 1);
    double best_val = phi(lo);
    best = lo;
    for (int i = 1; i < points; ++i) {
      const double z = lo + step * i;
      const double v = phi(z);
      if (v < best_val) {
        best_val = v;
        best = z;
      }
    }
    lo = best - 2 * step;
    hi = best + 2 * step;
  }
  return best;
}

}  // namespace testing_support
