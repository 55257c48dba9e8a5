#pragma once

#include <variant>

#include "pigd/types.hpp"

namespace pigd {

// Closed-form proximal operators. Every prox here solves
//   argmin_z ‖z - v‖² / (2γ) + g(z)
// exactly; nothing iterates.

namespace prox {

struct Zero {};

struct L1 {
  double lambda = 0.0;
};

struct Box {
  Vector lo;
  Vector hi;
};

// λ‖z‖₂ on the whole block (one group per block).
struct GroupL2 {
  double lambda = 0.0;
};

}  // namespace prox

using ProxKind = std::variant<prox::Zero, prox::L1, prox::Box, prox::GroupL2>;

/// sign(v_j) * max(|v_j| - tau, 0), coordinatewise.
Vector soft_threshold(const Vector& v, double tau);

/// clamp(v_j, lo_j, hi_j), coordinatewise.
Vector project_box(const Vector& v, const Vector& lo, const Vector& hi);

/// v * max(1 - tau/‖v‖, 0); returns 0 at v = 0.
Vector group_shrink(const Vector& v, double tau);

void validate(const ProxKind& kind, Index block_dim);

/// prox_{γ g}(v) for the block function described by `kind`.
Vector apply_prox(const ProxKind& kind, const Vector& v, double gamma);

/// g(z); +inf outside the box for Box.
double evaluate(const ProxKind& kind, const Vector& z);

}  // namespace pigd
