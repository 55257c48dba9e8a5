#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "pigd/prox.hpp"
#include "pigd/types.hpp"

namespace pigd {

/// Smooth part f of F = f + g. Implementations are immutable and must be
/// safe to evaluate from several threads at once.
class SmoothFunction {
 public:
  virtual ~SmoothFunction() = default;
  virtual Index dim() const = 0;
  virtual double value(const Vector& x) const = 0;
  virtual Vector gradient(const Vector& x) const = 0;
};

/// f(x) = ½ (x - c)ᵀ Q (x - c) + offset, Q symmetric positive semidefinite.
class QuadraticSmooth final : public SmoothFunction {
 public:
  QuadraticSmooth(Matrix q, Vector center, double offset = 0.0);
  Index dim() const override { return q_.rows(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  const Matrix& hessian() const { return q_; }
  const Vector& center() const { return center_; }

 private:
  Matrix q_;
  Vector center_;
  double offset_;
};

/// f(x) = ½ ‖A x - b‖².
class LeastSquaresSmooth final : public SmoothFunction {
 public:
  LeastSquaresSmooth(Matrix a, Vector b);
  Index dim() const override { return a_.cols(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;
  const Matrix& design() const { return a_; }
  const Vector& response() const { return b_; }

 private:
  Matrix a_;
  Vector b_;
};

/// f(x) = (1/p) Σ_j log(1 + exp(-y_j a_jᵀ x)), labels y_j ∈ {-1, +1}.
class LogisticSmooth final : public SmoothFunction {
 public:
  LogisticSmooth(Matrix a, Vector labels);
  Index dim() const override { return a_.cols(); }
  double value(const Vector& x) const override;
  Vector gradient(const Vector& x) const override;

 private:
  Matrix a_;
  Vector y_;
};

/// Adapter for ad-hoc smooth functions given as callables.
class CallableSmooth final : public SmoothFunction {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using GradFn = std::function<Vector(const Vector&)>;
  CallableSmooth(Index dim, ValueFn value, GradFn grad);
  Index dim() const override { return dim_; }
  double value(const Vector& x) const override { return value_(x); }
  Vector gradient(const Vector& x) const override { return grad_(x); }

 private:
  Index dim_;
  ValueFn value_;
  GradFn grad_;
};

/// Ordered partition of {0, ..., n-1} into m nonempty index groups.
class BlockPartition {
 public:
  BlockPartition() = default;
  explicit BlockPartition(std::vector<std::vector<Index>> groups);

  /// m contiguous blocks of equal size; m must divide n.
  static BlockPartition contiguous(Index n, std::size_t m);
  static BlockPartition single(Index n) { return contiguous(n, 1); }

  std::size_t count() const { return groups_.size(); }
  Index dim() const { return dim_; }
  const std::vector<Index>& indices(std::size_t i) const { return groups_.at(i); }
  Index block_dim(std::size_t i) const { return static_cast<Index>(groups_.at(i).size()); }

  Vector gather(const Vector& x, std::size_t i) const;
  void scatter(Vector& x, std::size_t i, const Vector& block) const;

 private:
  std::vector<std::vector<Index>> groups_;
  Index dim_ = 0;
};

struct ProblemParts {
  std::shared_ptr<const SmoothFunction> smooth;
  BlockPartition blocks;
  std::vector<ProxKind> block_terms;  // g_i, one per block
  double lipschitz = 0.0;             // L of ∇f
  Vector block_lipschitz;             // L_i, one per block
  std::optional<double> f_star;
  std::optional<double> nu;  // F(x) - F* >= nu ‖x - proj(x)‖²
  std::function<Vector(const Vector&)> solution_projection;
};

/// F(x) = f(x) + Σ_i g_i(x_i) with its oracles and optional ground truth.
///
/// Immutable after construction; the constructor enforces the partition,
/// dimension and Lipschitz invariants and throws ContractViolation otherwise.
class CompositeProblem {
 public:
  explicit CompositeProblem(ProblemParts parts);

  Index dim() const { return blocks_.dim(); }
  std::size_t block_count() const { return blocks_.count(); }
  const BlockPartition& blocks() const { return blocks_; }
  const SmoothFunction& smooth() const { return *smooth_; }
  const ProxKind& block_term(std::size_t i) const { return terms_.at(i); }
  double lipschitz() const { return lipschitz_; }
  const Vector& block_lipschitz() const { return block_lipschitz_; }
  double min_block_lipschitz() const { return block_lipschitz_.minCoeff(); }

  const std::optional<double>& f_star() const { return f_star_; }
  const std::optional<double>& nu() const { return nu_; }
  bool has_solution_projection() const { return static_cast<bool>(projection_); }

  double smooth_value(const Vector& x) const;
  Vector smooth_grad(const Vector& x) const;
  double nonsmooth_value(const Vector& x) const;

  /// Projection onto argmin F; throws UnsupportedOracle when absent.
  Vector project_to_solutions(const Vector& x) const;

  /// Copies with ground-truth metadata attached.
  CompositeProblem with_f_star(double f_star) const;
  CompositeProblem with_nu(double nu) const;
  CompositeProblem with_solution_projection(std::function<Vector(const Vector&)> proj) const;

 private:
  std::shared_ptr<const SmoothFunction> smooth_;
  BlockPartition blocks_;
  std::vector<ProxKind> terms_;
  double lipschitz_;
  Vector block_lipschitz_;
  std::optional<double> f_star_;
  std::optional<double> nu_;
  std::function<Vector(const Vector&)> projection_;
};

/// (x^k, x^{k-1}, k). x^{-1} defaults to x^0.
struct IterateState {
  Vector x_curr;
  Vector x_prev;
  std::size_t k = 0;

  static IterateState start(const Vector& x0) { return {x0, x0, 0}; }
  static IterateState start(const Vector& x0, const Vector& x_minus1) { return {x0, x_minus1, 0}; }
};

double objective(const CompositeProblem& problem, const Vector& x);
Vector grad_f(const CompositeProblem& problem, const Vector& x);
Vector block_grad_f(const CompositeProblem& problem, const Vector& x, std::size_t block);
Vector prox_block(const CompositeProblem& problem, std::size_t block, const Vector& v, double gamma);

/// prox_{γ g}(v) applied blockwise with one stepsize.
Vector prox_full(const CompositeProblem& problem, const Vector& v, double gamma);

/// Max over coordinates of |∇f_j - fd_j| / max(1, |∇f_j|, |fd_j|), where fd is
/// the central difference of f with step h.
double check_gradient_fd(const CompositeProblem& problem, const Vector& x, double h);

}  // namespace pigd
