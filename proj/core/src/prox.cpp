#include "pigd/prox.hpp"

#include <cmath>

namespace pigd {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

Vector soft_threshold(const Vector& v, double tau) {
  require(tau >= 0.0, "soft_threshold: tau must be nonnegative");
  Vector out(v.size());
  for (Index j = 0; j < v.size(); ++j) {
    const double mag = std::abs(v(j)) - tau;
    out(j) = mag > 0.0 ? std::copysign(mag, v(j)) : 0.0;
  }
  return out;
}

Vector project_box(const Vector& v, const Vector& lo, const Vector& hi) {
  require(lo.size() == v.size() && hi.size() == v.size(), "project_box: dimension mismatch");
  require((lo.array() <= hi.array()).all(), "project_box: lo > hi");
  return v.cwiseMax(lo).cwiseMin(hi);
}

Vector group_shrink(const Vector& v, double tau) {
  require(tau >= 0.0, "group_shrink: tau must be nonnegative");
  const double norm = v.norm();
  if (norm <= tau) return Vector::Zero(v.size());
  return v * (1.0 - tau / norm);
}

void validate(const ProxKind& kind, Index block_dim) {
  std::visit(Overloaded{
                 [](const prox::Zero&) {},
                 [](const prox::L1& p) { require(p.lambda >= 0.0, "l1: lambda must be >= 0"); },
                 [block_dim](const prox::Box& p) {
                   require(p.lo.size() == block_dim && p.hi.size() == block_dim,
                           "box: bounds must match the block dimension");
                   require((p.lo.array() <= p.hi.array()).all(), "box: lo > hi");
                 },
                 [](const prox::GroupL2& p) {
                   require(p.lambda >= 0.0, "group_l2: lambda must be >= 0");
                 },
             },
             kind);
}

Vector apply_prox(const ProxKind& kind, const Vector& v, double gamma) {
  require(gamma > 0.0, "prox: stepsize must be positive");
  return std::visit(Overloaded{
                        [&](const prox::Zero&) -> Vector { return v; },
                        [&](const prox::L1& p) -> Vector { return soft_threshold(v, gamma * p.lambda); },
                        [&](const prox::Box& p) -> Vector { return project_box(v, p.lo, p.hi); },
                        [&](const prox::GroupL2& p) -> Vector { return group_shrink(v, gamma * p.lambda); },
                    },
                    kind);
}

double evaluate(const ProxKind& kind, const Vector& z) {
  return std::visit(Overloaded{
                        [](const prox::Zero&) { return 0.0; },
                        [&](const prox::L1& p) { return p.lambda * z.lpNorm<1>(); },
                        [&](const prox::Box& p) {
                          const bool inside =
                              (z.array() >= p.lo.array()).all() && (z.array() <= p.hi.array()).all();
                          return inside ? 0.0 : kInf;
                        },
                        [&](const prox::GroupL2& p) { return p.lambda * z.norm(); },
                    },
                    kind);
}

}  // namespace pigd
