#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "pigd/problem.hpp"

namespace pigd {

struct ReferenceSolution {
  Vector x_star;
  double f_star = 0.0;
  double residual = 0.0;  // ‖S_{1/L}(x_star)‖
  std::size_t iterations_used = 0;
  bool converged = false;
};

/// ‖x - prox_{γg}(x - γ∇f(x))‖.
double residual_norm(const CompositeProblem& problem, const Vector& x, double gamma);

/// FISTA with gradient-based adaptive restart and stepsize 1/L, started at
/// x0 (zero when omitted). Stops once ‖S_{1/L}(x)‖ <= tol; on budget
/// exhaustion returns the iterate with the smallest residual, unconverged.
ReferenceSolution solve_reference(const CompositeProblem& problem, double tol = 1e-12,
                                  std::size_t max_iters = 1000000,
                                  const std::optional<Vector>& x0 = std::nullopt);

/// 64-bit FNV-1a of the bytes of s.
std::uint64_t fnv1a64(const std::string& s);

/// One JSON file per reference solution, named by the FNV-1a hash of the
/// problem key. Writes go to a temporary file renamed into place.
class ReferenceCache {
 public:
  explicit ReferenceCache(std::filesystem::path dir);

  std::filesystem::path path_for(const std::string& problem_key) const;
  std::optional<ReferenceSolution> load(const std::string& problem_key) const;
  void store(const std::string& problem_key, const ReferenceSolution& sol) const;

  /// load, or solve and store on a miss.
  ReferenceSolution get_or_solve(const std::string& problem_key, const CompositeProblem& problem,
                                 double tol = 1e-12, std::size_t max_iters = 1000000) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace pigd
