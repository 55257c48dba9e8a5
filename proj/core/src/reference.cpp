#include "pigd/reference.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace pigd {

ReferenceSolution solve_reference(const CompositeProblem& problem, double tol, std::size_t max_iters,
                                  const std::optional<Vector>& x0) {
  require(tol > 0.0, "solve_reference: tol must be positive");
  require(max_iters >= 1, "solve_reference: max_iters must be >= 1");
  const double l = problem.lipschitz();
  const double step = 1.0 / l;
  Vector x = x0 ? *x0 : Vector::Zero(problem.dim());
  require(x.size() == problem.dim(), "solve_reference: x0 dimension mismatch");
  x = prox_full(problem, x, step);  // land in dom g
  Vector x_prev = x;
  Vector y = x;
  double t = 1.0;

  ReferenceSolution best;
  best.x_star = x;
  best.residual = kInf;
  for (std::size_t it = 1; it <= max_iters; ++it) {
    const Vector gy = problem.smooth_grad(y);
    if (!gy.allFinite()) throw NumericalError("solve_reference: non-finite gradient");
    x = prox_full(problem, y - step * gy, step);
    const double res = residual_norm(problem, x, step);
    if (res < best.residual) {
      best.x_star = x;
      best.residual = res;
      best.iterations_used = it;
    }
    if (res <= tol) {
      best.converged = true;
      break;
    }
    if ((y - x).dot(x - x_prev) > 0.0) {
      t = 1.0;
      y = x;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      y = x + ((t - 1.0) / t_next) * (x - x_prev);
      t = t_next;
    }
    x_prev = x;
  }
  if (!best.converged) best.iterations_used = max_iters;
  best.f_star = objective(problem, best.x_star);
  return best;
}

double residual_norm(const CompositeProblem& problem, const Vector& x, double gamma) {
  return (x - prox_full(problem, x - gamma * problem.smooth_grad(x), gamma)).norm();
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

ReferenceCache::ReferenceCache(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::filesystem::create_directories(dir_);
}

std::filesystem::path ReferenceCache::path_for(const std::string& problem_key) const {
  char name[32];
  std::snprintf(name, sizeof name, "%016llx.json", static_cast<unsigned long long>(fnv1a64(problem_key)));
  return dir_ / name;
}

std::optional<ReferenceSolution> ReferenceCache::load(const std::string& problem_key) const {
  const auto path = path_for(problem_key);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception&) {
    return std::nullopt;  // truncated or foreign file; treat as a miss
  }
  // A hash collision would hand back another problem's answer.
  if (!doc.contains("problem_key") || doc["problem_key"] != problem_key) return std::nullopt;
  ReferenceSolution sol;
  const auto xs = doc.at("x_star").get<std::vector<double>>();
  sol.x_star = Eigen::Map<const Vector>(xs.data(), static_cast<Index>(xs.size()));
  sol.f_star = doc.at("f_star").get<double>();
  sol.residual = doc.at("residual").get<double>();
  sol.iterations_used = doc.at("iterations_used").get<std::size_t>();
  sol.converged = true;
  return sol;
}

void ReferenceCache::store(const std::string& problem_key, const ReferenceSolution& sol) const {
  nlohmann::json doc;
  doc["problem_key"] = problem_key;
  doc["x_star"] = std::vector<double>(sol.x_star.data(), sol.x_star.data() + sol.x_star.size());
  doc["f_star"] = sol.f_star;
  doc["residual"] = sol.residual;
  doc["iterations_used"] = sol.iterations_used;
  const auto path = path_for(problem_key);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("reference cache: cannot write " + tmp.string());
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

ReferenceSolution ReferenceCache::get_or_solve(const std::string& problem_key,
                                               const CompositeProblem& problem, double tol,
                                               std::size_t max_iters) const {
  if (auto hit = load(problem_key); hit && hit->residual <= tol) return *hit;
  ReferenceSolution sol = solve_reference(problem, tol, max_iters);
  if (sol.converged) store(problem_key, sol);
  return sol;
}

}  // namespace pigd
