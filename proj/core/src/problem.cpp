#include "pigd/problem.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pigd {

QuadraticSmooth::QuadraticSmooth(Matrix q, Vector center, double offset)
    : q_(std::move(q)), center_(std::move(center)), offset_(offset) {
  require(q_.rows() == q_.cols(), "quadratic: Q must be square");
  require(center_.size() == q_.rows(), "quadratic: center dimension mismatch");
}

double QuadraticSmooth::value(const Vector& x) const {
  require(x.size() == dim(), "quadratic: dimension mismatch");
  const Vector d = x - center_;
  return 0.5 * d.dot(q_ * d) + offset_;
}

Vector QuadraticSmooth::gradient(const Vector& x) const {
  require(x.size() == dim(), "quadratic: dimension mismatch");
  return q_ * (x - center_);
}

LeastSquaresSmooth::LeastSquaresSmooth(Matrix a, Vector b) : a_(std::move(a)), b_(std::move(b)) {
  require(a_.rows() == b_.size(), "least squares: rows of A must match b");
}

double LeastSquaresSmooth::value(const Vector& x) const {
  require(x.size() == dim(), "least squares: dimension mismatch");
  return 0.5 * (a_ * x - b_).squaredNorm();
}

Vector LeastSquaresSmooth::gradient(const Vector& x) const {
  require(x.size() == dim(), "least squares: dimension mismatch");
  return a_.transpose() * (a_ * x - b_);
}

LogisticSmooth::LogisticSmooth(Matrix a, Vector labels) : a_(std::move(a)), y_(std::move(labels)) {
  require(a_.rows() == y_.size(), "logistic: rows of A must match labels");
  require(a_.rows() > 0, "logistic: need at least one sample");
  for (Index j = 0; j < y_.size(); ++j)
    require(y_(j) == 1.0 || y_(j) == -1.0, "logistic: labels must be -1 or +1");
}

namespace {

// log(1 + exp(-t)) without overflow.
double softplus_neg(double t) {
  return t > 0.0 ? std::log1p(std::exp(-t)) : -t + std::log1p(std::exp(t));
}

// d/dt log(1 + exp(-t)) = -1 / (1 + exp(t)).
double softplus_neg_deriv(double t) {
  if (t >= 0.0) {
    const double e = std::exp(-t);
    return -e / (1.0 + e);
  }
  return -1.0 / (1.0 + std::exp(t));
}

}  // namespace

double LogisticSmooth::value(const Vector& x) const {
  require(x.size() == dim(), "logistic: dimension mismatch");
  const Vector margins = y_.cwiseProduct(a_ * x);
  double sum = 0.0;
  for (Index j = 0; j < margins.size(); ++j) sum += softplus_neg(margins(j));
  return sum / static_cast<double>(a_.rows());
}

Vector LogisticSmooth::gradient(const Vector& x) const {
  require(x.size() == dim(), "logistic: dimension mismatch");
  const Vector margins = y_.cwiseProduct(a_ * x);
  Vector weights(margins.size());
  for (Index j = 0; j < margins.size(); ++j) weights(j) = y_(j) * softplus_neg_deriv(margins(j));
  return a_.transpose() * weights / static_cast<double>(a_.rows());
}

CallableSmooth::CallableSmooth(Index dim, ValueFn value, GradFn grad)
    : dim_(dim), value_(std::move(value)), grad_(std::move(grad)) {
  require(dim_ > 0, "callable smooth: dim must be positive");
  require(value_ && grad_, "callable smooth: both oracles are required");
}

BlockPartition::BlockPartition(std::vector<std::vector<Index>> groups) : groups_(std::move(groups)) {
  require(!groups_.empty(), "blocks: need at least one block");
  Index n = 0;
  for (const auto& g : groups_) {
    require(!g.empty(), "blocks: every block must be nonempty");
    n += static_cast<Index>(g.size());
  }
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (const auto& g : groups_) {
    for (Index idx : g) {
      require(idx >= 0 && idx < n, "blocks: index out of range (blocks must cover 0..n-1)");
      require(!seen[static_cast<std::size_t>(idx)], "blocks: blocks must be disjoint");
      seen[static_cast<std::size_t>(idx)] = true;
    }
  }
  dim_ = n;
}

BlockPartition BlockPartition::contiguous(Index n, std::size_t m) {
  require(n > 0, "blocks: dimension must be positive");
  require(m > 0 && static_cast<Index>(m) <= n, "blocks: need 1 <= m <= n");
  require(n % static_cast<Index>(m) == 0, "blocks: m must divide n");
  const Index size = n / static_cast<Index>(m);
  std::vector<std::vector<Index>> groups(m);
  for (std::size_t i = 0; i < m; ++i) {
    groups[i].resize(static_cast<std::size_t>(size));
    for (Index j = 0; j < size; ++j) groups[i][static_cast<std::size_t>(j)] = static_cast<Index>(i) * size + j;
  }
  return BlockPartition(std::move(groups));
}

Vector BlockPartition::gather(const Vector& x, std::size_t i) const {
  require(x.size() == dim_, "blocks: dimension mismatch");
  require(i < groups_.size(), "blocks: block index out of range");
  return x(groups_[i]);
}

void BlockPartition::scatter(Vector& x, std::size_t i, const Vector& block) const {
  require(x.size() == dim_, "blocks: dimension mismatch");
  require(i < groups_.size(), "blocks: block index out of range");
  require(block.size() == static_cast<Index>(groups_[i].size()), "blocks: block dimension mismatch");
  x(groups_[i]) = block;
}

CompositeProblem::CompositeProblem(ProblemParts parts)
    : smooth_(std::move(parts.smooth)),
      blocks_(std::move(parts.blocks)),
      terms_(std::move(parts.block_terms)),
      lipschitz_(parts.lipschitz),
      block_lipschitz_(std::move(parts.block_lipschitz)),
      f_star_(parts.f_star),
      nu_(parts.nu),
      projection_(std::move(parts.solution_projection)) {
  require(smooth_ != nullptr, "problem: smooth part is required");
  require(blocks_.count() > 0, "problem: block partition is required");
  require(smooth_->dim() == blocks_.dim(), "problem: smooth part and blocks disagree on dimension");
  require(terms_.size() == blocks_.count(), "problem: need one nonsmooth term per block");
  require(std::isfinite(lipschitz_) && lipschitz_ > 0.0, "problem: L must be positive and finite");
  require(block_lipschitz_.size() == static_cast<Index>(blocks_.count()),
          "problem: need one block Lipschitz constant per block");
  for (Index i = 0; i < block_lipschitz_.size(); ++i) {
    require(block_lipschitz_(i) > 0.0, "problem: block Lipschitz constants must be positive");
    // Power-iteration estimates of L and L_i carry ~1e-10 relative error.
    require(block_lipschitz_(i) <= lipschitz_ * (1.0 + 1e-9),
            "problem: block Lipschitz constant exceeds the global one");
  }
  for (std::size_t i = 0; i < terms_.size(); ++i) validate(terms_[i], blocks_.block_dim(i));
  if (nu_) require(*nu_ > 0.0, "problem: nu must be positive");
}

double CompositeProblem::smooth_value(const Vector& x) const {
  require(x.size() == dim(), "problem: dimension mismatch");
  return smooth_->value(x);
}

Vector CompositeProblem::smooth_grad(const Vector& x) const {
  require(x.size() == dim(), "problem: dimension mismatch");
  return smooth_->gradient(x);
}

double CompositeProblem::nonsmooth_value(const Vector& x) const {
  require(x.size() == dim(), "problem: dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < terms_.size(); ++i) sum += evaluate(terms_[i], blocks_.gather(x, i));
  return sum;
}

Vector CompositeProblem::project_to_solutions(const Vector& x) const {
  if (!projection_) throw UnsupportedOracle("problem has no solution projection oracle");
  require(x.size() == dim(), "problem: dimension mismatch");
  return projection_(x);
}

CompositeProblem CompositeProblem::with_f_star(double f_star) const {
  CompositeProblem copy = *this;
  copy.f_star_ = f_star;
  return copy;
}

CompositeProblem CompositeProblem::with_nu(double nu) const {
  require(nu > 0.0, "problem: nu must be positive");
  CompositeProblem copy = *this;
  copy.nu_ = nu;
  return copy;
}

CompositeProblem CompositeProblem::with_solution_projection(
    std::function<Vector(const Vector&)> proj) const {
  CompositeProblem copy = *this;
  copy.projection_ = std::move(proj);
  return copy;
}

double objective(const CompositeProblem& problem, const Vector& x) {
  return problem.smooth_value(x) + problem.nonsmooth_value(x);
}

Vector grad_f(const CompositeProblem& problem, const Vector& x) { return problem.smooth_grad(x); }

Vector block_grad_f(const CompositeProblem& problem, const Vector& x, std::size_t block) {
  require(block < problem.block_count(), "block_grad_f: block index out of range");
  return problem.blocks().gather(problem.smooth_grad(x), block);
}

Vector prox_block(const CompositeProblem& problem, std::size_t block, const Vector& v, double gamma) {
  require(block < problem.block_count(), "prox_block: block index out of range");
  require(gamma > 0.0, "prox_block: stepsize must be positive");
  require(v.size() == problem.blocks().block_dim(block), "prox_block: block dimension mismatch");
  return apply_prox(problem.block_term(block), v, gamma);
}

Vector prox_full(const CompositeProblem& problem, const Vector& v, double gamma) {
  require(v.size() == problem.dim(), "prox_full: dimension mismatch");
  Vector out(v.size());
  const auto& blocks = problem.blocks();
  for (std::size_t i = 0; i < blocks.count(); ++i)
    blocks.scatter(out, i, prox_block(problem, i, blocks.gather(v, i), gamma));
  return out;
}

double check_gradient_fd(const CompositeProblem& problem, const Vector& x, double h) {
  require(h > 0.0, "check_gradient_fd: h must be positive");
  const Vector g = problem.smooth_grad(x);
  double worst = 0.0;
  Vector probe = x;
  for (Index j = 0; j < x.size(); ++j) {
    probe(j) = x(j) + h;
    const double up = problem.smooth_value(probe);
    probe(j) = x(j) - h;
    const double down = problem.smooth_value(probe);
    probe(j) = x(j);
    const double fd = (up - down) / (2.0 * h);
    const double scale = std::max({1.0, std::abs(g(j)), std::abs(fd)});
    worst = std::max(worst, std::abs(g(j) - fd) / scale);
  }
  return worst;
}

}  // namespace pigd
