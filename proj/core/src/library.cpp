#include "pigd/library.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <memory>
#include <sstream>

#include "pigd/linalg.hpp"
#include "pigd/reference.hpp"
#include "pigd/rng.hpp"

namespace pigd {

std::string to_string(InstanceKind kind) {
  switch (kind) {
    case InstanceKind::quadratic: return "quadratic";
    case InstanceKind::quadratic_l1: return "quadratic_l1";
    case InstanceKind::lasso: return "lasso";
    case InstanceKind::logistic_l1: return "logistic_l1";
    case InstanceKind::noncoercive_quadratic: return "noncoercive_quadratic";
  }
  return "?";
}

InstanceKind parse_instance_kind(const std::string& name) {
  for (auto k : {InstanceKind::quadratic, InstanceKind::quadratic_l1, InstanceKind::lasso,
                 InstanceKind::logistic_l1, InstanceKind::noncoercive_quadratic})
    if (to_string(k) == name) return k;
  throw ContractViolation("unknown instance kind '" + name + "'");
}

namespace {

bool is_data_kind(InstanceKind k) { return k == InstanceKind::lasso || k == InstanceKind::logistic_l1; }

bool has_regularizer(InstanceKind k) {
  return k == InstanceKind::quadratic_l1 || k == InstanceKind::lasso || k == InstanceKind::logistic_l1;
}

Index rows_of(const InstanceSpec& spec) { return spec.rows > 0 ? spec.rows : 4 * spec.n; }

}  // namespace

void validate(const InstanceSpec& spec) {
  require(spec.n >= 1, "instance: n must be >= 1");
  require(spec.blocks >= 1 && static_cast<Index>(spec.blocks) <= spec.n, "instance: need 1 <= blocks <= n");
  require(spec.n % static_cast<Index>(spec.blocks) == 0, "instance: blocks must divide n");
  require(std::isfinite(spec.reg_lambda) && spec.reg_lambda >= 0.0, "instance: reg_lambda must be >= 0");
  require(has_regularizer(spec.kind) || spec.reg_lambda == 0.0,
          "instance: reg_lambda must be 0 for kind " + to_string(spec.kind));
  require(std::isfinite(spec.conditioning) && spec.conditioning >= 1.0, "instance: conditioning must be >= 1");
  require(spec.rows >= 0, "instance: rows must be >= 0");
  if (spec.kind == InstanceKind::quadratic || spec.kind == InstanceKind::quadratic_l1 ||
      spec.kind == InstanceKind::noncoercive_quadratic)
    require(spec.conditioning >= 2.0, "instance: quadratic kinds need conditioning >= 2");
  if (spec.kind == InstanceKind::noncoercive_quadratic)
    require(spec.rank_deficiency >= 1 && spec.rank_deficiency < spec.n,
            "instance: rank_deficiency must be in [1, n)");
}

std::string instance_key(const InstanceSpec& spec) {
  std::ostringstream os;
  os.precision(17);
  os << "kind=" << to_string(spec.kind) << ";n=" << spec.n << ";rows=" << rows_of(spec)
     << ";lambda=" << spec.reg_lambda << ";blocks=" << spec.blocks << ";seed=" << spec.seed
     << ";conditioning=" << spec.conditioning;
  if (spec.kind == InstanceKind::noncoercive_quadratic) os << ";rank_deficiency=" << spec.rank_deficiency;
  return os.str();
}

namespace {

std::vector<ProxKind> terms_for(const InstanceSpec& spec) {
  if (spec.reg_lambda > 0.0) return std::vector<ProxKind>(spec.blocks, prox::L1{spec.reg_lambda});
  return std::vector<ProxKind>(spec.blocks, prox::Zero{});
}

Matrix spectral_matrix(const Matrix& u, const Vector& eig) {
  Matrix q = u * eig.asDiagonal() * u.transpose();
  return 0.5 * (q + q.transpose());
}

Vector quadratic_block_lipschitz(const Matrix& q, const BlockPartition& blocks) {
  Vector li(static_cast<Index>(blocks.count()));
  for (std::size_t i = 0; i < blocks.count(); ++i) {
    const Matrix qii = q(blocks.indices(i), blocks.indices(i));
    Eigen::SelfAdjointEigenSolver<Matrix> es(qii, Eigen::EigenvaluesOnly);
    li(static_cast<Index>(i)) = es.eigenvalues().maxCoeff();
  }
  return li;
}

ProblemParts quadratic_parts(const InstanceSpec& spec, Rng& rng, const Vector& eig, Matrix& u_out,
                             Vector& center_out) {
  u_out = random_orthogonal(spec.n, rng);
  center_out = gaussian_vector(spec.n, rng);
  Matrix q = spectral_matrix(u_out, eig);
  ProblemParts parts;
  parts.blocks = BlockPartition::contiguous(spec.n, spec.blocks);
  parts.block_terms = terms_for(spec);
  // Constructed spectrum; the symmetrized product can exceed it only by rounding.
  parts.block_lipschitz = quadratic_block_lipschitz(q, parts.blocks);
  parts.lipschitz = std::max(eig.maxCoeff(), parts.block_lipschitz.maxCoeff());
  parts.smooth = std::make_shared<QuadraticSmooth>(std::move(q), center_out, 0.0);
  return parts;
}

Matrix scaled_design(const InstanceSpec& spec, Rng& rng) {
  Matrix a = gaussian_matrix(rows_of(spec), spec.n, rng);
  if (spec.conditioning > 1.0 && spec.n > 1) {
    for (Index j = 0; j < spec.n; ++j)
      a.col(j) *= std::pow(spec.conditioning, -static_cast<double>(j) / (2.0 * static_cast<double>(spec.n - 1)));
  }
  return a;
}

Vector sparse_truth(Index n, Rng& rng) {
  const Index nnz = std::max<Index>(1, (n + 9) / 10);
  Vector x = Vector::Zero(n);
  Index placed = 0;
  while (placed < nnz) {
    const auto j = static_cast<Index>(rng.uniform_index(static_cast<std::uint64_t>(n)));
    if (x(j) != 0.0) continue;
    double v = 0.0;
    while (v == 0.0) v = rng.normal();
    x(j) = v;
    ++placed;
  }
  return x;
}

Vector design_block_lipschitz(const Matrix& a, const BlockPartition& blocks, double scale) {
  Vector li(static_cast<Index>(blocks.count()));
  for (std::size_t i = 0; i < blocks.count(); ++i)
    li(static_cast<Index>(i)) = scale * spectral_norm_sq(a(Eigen::all, blocks.indices(i))).eigenvalue;
  return li;
}

void attach_reference(ProblemParts& parts, bool attach_projection, const InstanceSpec& spec,
                      const ReferenceCache* cache) {
  CompositeProblem tmp(parts);
  const ReferenceSolution ref = cache ? cache->get_or_solve(instance_key(spec), tmp, 1e-12, 1000000)
                                      : solve_reference(tmp, 1e-12, 1000000);
  if (!ref.converged)
    throw NumericalError("make_instance: reference solve stopped at residual " + std::to_string(ref.residual));
  parts.f_star = ref.f_star;
  if (attach_projection) {
    const Vector x_star = ref.x_star;
    parts.solution_projection = [x_star](const Vector&) { return x_star; };
  }
}

}  // namespace

CompositeProblem make_instance(const InstanceSpec& spec, const ReferenceCache* cache) {
  validate(spec);
  Rng rng(spec.seed);
  const Index n = spec.n;
  switch (spec.kind) {
    case InstanceKind::quadratic:
    case InstanceKind::quadratic_l1: {
      Vector eig(n);
      const double lo = 2.0 / spec.conditioning;
      for (Index j = 0; j < n; ++j)
        eig(j) = n == 1 ? 1.0 : lo * std::pow(1.0 / lo, static_cast<double>(j) / static_cast<double>(n - 1));
      Matrix u;
      Vector center;
      ProblemParts parts = quadratic_parts(spec, rng, eig, u, center);
      parts.nu = eig.minCoeff() / 2.0;
      if (spec.kind == InstanceKind::quadratic) {
        parts.f_star = 0.0;
        parts.solution_projection = [center](const Vector&) { return center; };
      } else {
        attach_reference(parts, true, spec, cache);
      }
      return CompositeProblem(std::move(parts));
    }
    case InstanceKind::noncoercive_quadratic: {
      const Index positive = n - spec.rank_deficiency;
      Vector eig = Vector::Zero(n);
      const Index low = positive / 2 > 0 ? positive / 2 : 1;
      for (Index j = 0; j < positive; ++j) eig(j) = j < low ? 2.0 / spec.conditioning : 1.0;
      Matrix u;
      Vector center;
      ProblemParts parts = quadratic_parts(spec, rng, eig, u, center);
      parts.lipschitz = std::max(eig.maxCoeff(), parts.block_lipschitz.maxCoeff());
      parts.nu = 1.0 / spec.conditioning;
      parts.f_star = 0.0;
      const Matrix null_basis = u.rightCols(spec.rank_deficiency);
      parts.solution_projection = [center, null_basis](const Vector& x) -> Vector {
        return center + null_basis * (null_basis.transpose() * (x - center));
      };
      return CompositeProblem(std::move(parts));
    }
    case InstanceKind::lasso:
    case InstanceKind::logistic_l1: {
      Matrix a = scaled_design(spec, rng);
      const Vector x_true = sparse_truth(n, rng);
      Vector noise = gaussian_vector(a.rows(), rng);
      Vector b = a * x_true + 0.1 * noise;
      ProblemParts parts;
      parts.blocks = BlockPartition::contiguous(n, spec.blocks);
      parts.block_terms = terms_for(spec);
      if (spec.kind == InstanceKind::lasso) {
        parts.lipschitz = spectral_norm_sq(a).eigenvalue;
        parts.block_lipschitz = design_block_lipschitz(a, parts.blocks, 1.0);
        parts.smooth = std::make_shared<LeastSquaresSmooth>(std::move(a), std::move(b));
      } else {
        const double scale = 1.0 / (4.0 * static_cast<double>(a.rows()));
        parts.lipschitz = scale * spectral_norm_sq(a).eigenvalue;
        parts.block_lipschitz = design_block_lipschitz(a, parts.blocks, scale);
        Vector labels = b.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
        parts.smooth = std::make_shared<LogisticSmooth>(std::move(a), std::move(labels));
      }
      if (is_data_kind(spec.kind)) attach_reference(parts, false, spec, cache);
      return CompositeProblem(std::move(parts));
    }
  }
  throw ContractViolation("make_instance: unknown kind");
}

Vector solution_project(const CompositeProblem& problem, const Vector& x) {
  return problem.project_to_solutions(x);
}

}  // namespace pigd
