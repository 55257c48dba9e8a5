#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "pigd/problem.hpp"
#include "pigd/reference.hpp"

namespace pigd {

enum class InstanceKind { quadratic, quadratic_l1, lasso, logistic_l1, noncoercive_quadratic };

std::string to_string(InstanceKind kind);
/// Throws ContractViolation on an unknown name.
InstanceKind parse_instance_kind(const std::string& name);

/// Seeded synthetic instance description.
///
/// quadratic             f = ½(x - x*)ᵀQ(x - x*), Q = U diag(λ) Uᵀ with U Haar
///                       orthogonal and λ geometric from 2/conditioning to 1.
///                       F* = 0, ν = λ_min/2 so L/ν = conditioning.
/// quadratic_l1          same f plus reg_lambda‖x‖₁; x*, F* by reference solve.
/// noncoercive_quadratic f = ½(x - c)ᵀQ(x - c) with rank_deficiency zero
///                       eigenvalues; half of the others at 2/conditioning and
///                       the rest at 1. argmin F is c + null(Q), F* = 0.
/// lasso                 ½‖Ax - b‖² + reg_lambda‖x‖₁, A is rows × n standard
///                       normal with column j scaled by conditioning^(-j/(2(n-1))),
///                       b = A x_true + 0.1·noise, x_true 10% sparse.
/// logistic_l1           mean logistic loss on the same kind of design with
///                       labels sign(A x_true + 0.1·noise), plus reg_lambda‖x‖₁.
struct InstanceSpec {
  InstanceKind kind = InstanceKind::quadratic;
  Index n = 10;
  Index rows = 0;  // data kinds; 0 means 4n
  double reg_lambda = 0.0;
  std::size_t blocks = 1;
  std::uint64_t seed = 0;
  double conditioning = 10.0;
  Index rank_deficiency = 1;  // noncoercive_quadratic only
};

void validate(const InstanceSpec& spec);

/// Canonical text form, used as the reference-cache key.
std::string instance_key(const InstanceSpec& spec);

/// Builds the problem with L, L_i and, where available, F*, ν and the
/// solution projection attached. Kinds without a closed-form minimizer get F*
/// from solve_reference at tolerance 1e-12, read through `cache` when given.
CompositeProblem make_instance(const InstanceSpec& spec, const ReferenceCache* cache = nullptr);

/// Euclidean projection onto argmin F; UnsupportedOracle when the instance
/// has no closed form.
Vector solution_project(const CompositeProblem& problem, const Vector& x);

}  // namespace pigd
