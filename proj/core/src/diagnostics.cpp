#include "pigd/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace pigd {

double lyapunov_xi(double F_val, double step_sq, double delta, double f_star) {
  return F_val + delta * step_sq - f_star;
}

Vector residual_S(const CompositeProblem& problem, const Vector& x, double gamma) {
  require(gamma > 0.0, "residual_S: gamma must be positive");
  return x - prox_full(problem, x - gamma * problem.smooth_grad(x), gamma);
}

namespace {

bool consecutive(const Trace& t, std::size_t j) { return t.entries[j + 1].k == t.entries[j].k + 1; }

double scale0(const Trace& t) { return 1.0 + std::abs(t.entries.front().F); }

}  // namespace

double descent_audit(const Trace& trace) {
  require(trace.entries.size() >= 2, "descent_audit: need at least 2 entries");
  double worst = 0.0;
  for (std::size_t j = 0; j + 1 < trace.entries.size(); ++j)
    if (consecutive(trace, j)) worst = std::min(worst, trace.entries[j + 1].descent_slack);
  return worst;
}

double lyapunov_increase(const Trace& trace) {
  require(trace.entries.size() >= 2, "lyapunov_increase: need at least 2 entries");
  double worst = -kInf;
  for (std::size_t j = 0; j + 1 < trace.entries.size(); ++j)
    worst = std::max(worst, trace.entries[j + 1].lyapunov - trace.entries[j].lyapunov);
  return worst / scale0(trace);
}

double trace_epsilon(const Trace& trace, std::size_t j) {
  require(j + 1 < trace.entries.size(), "trace_epsilon: entry out of range");
  const double l = trace.meta.lipschitz;
  const double delta_next = delta_coeff(trace.entries[j + 1].gamma, l);
  return epsilon_coeff(trace.entries[j].gamma, delta_next, trace.meta.c, l);
}

double trace_epsilon_cyclic(const Trace& trace, std::size_t j) {
  require(j + 1 < trace.entries.size(), "trace_epsilon_cyclic: entry out of range");
  const Vector& li = trace.meta.block_lipschitz;
  const Vector& g_k = trace.entries[j].block_gammas;
  const Vector& g_next = trace.entries[j + 1].block_gammas;
  require(g_k.size() == li.size() && g_next.size() == li.size(),
          "trace_epsilon_cyclic: trace lacks per-block stepsizes");
  const double c = trace.meta.c;
  double first = 0.0;
  double second = 0.0;
  for (Index i = 0; i < li.size(); ++i) {
    const double d = delta_coeff(g_next(i), li(i));
    first += d * d + li(i) * li(i);
    second += 1.0 / (g_k(i) * g_k(i));
  }
  return 4.0 * c / ((1.0 - c) * li.minCoeff()) * std::max(first, second);
}

AuditResult lemma5_audit(const Trace& trace, const CompositeProblem& problem, CyclicFactor factor) {
  if (!problem.has_solution_projection())
    throw UnsupportedOracle("lemma5_audit: problem has no solution projection");
  require(trace.meta.f_star_known, "lemma5_audit: trace was recorded without F*");
  require(trace.iterates.size() == trace.entries.size(), "lemma5_audit: trace lacks iterates");
  require(trace.meta.variant != Variant::stochastic, "lemma5_audit: full or cyclic traces only");
  const bool cyclic = trace.meta.variant == Variant::cyclic;
  const double norm = scale0(trace) * scale0(trace);
  AuditResult out;
  for (std::size_t j = 0; j + 1 < trace.entries.size(); ++j) {
    if (!consecutive(trace, j)) continue;
    const TraceEntry& a = trace.entries[j];
    const TraceEntry& b = trace.entries[j + 1];
    const Vector& x_next = trace.iterates[j + 1];
    const double dist_sq = (x_next - problem.project_to_solutions(x_next)).squaredNorm();
    double eps = 0.0;
    double second = 0.0;
    if (cyclic) {
      eps = trace_epsilon_cyclic(trace, j);
      second = 3.0 * dist_sq + (factor == CyclicFactor::literal ? a.step_sq : b.step_sq);
    } else {
      eps = trace_epsilon(trace, j);
      second = 2.0 * dist_sq + b.step_sq;
    }
    const double slack = eps * (a.lyapunov - b.lyapunov) * second - b.lyapunov * b.lyapunov;
    out.max_violation = std::min(out.max_violation, slack / norm);
    ++out.checked;
  }
  return out;
}

double omega_from_ell(double ell) {
  require(ell > 0.0, "omega_from_ell: ell must be positive");
  return 2.0 * ell / (std::sqrt(ell * ell + 4.0 * ell) + ell);
}

RatioAudit linear_ratio_audit(const Trace& trace, double nu, double floor) {
  require(nu > 0.0, "linear_ratio_audit: nu must be positive");
  require(trace.meta.variant == Variant::full, "linear_ratio_audit: full traces only");
  require(trace.meta.f_star_known, "linear_ratio_audit: trace was recorded without F*");
  const double cutoff = floor * (1.0 + std::abs(trace.meta.f_star));
  const double l = trace.meta.lipschitz;
  RatioAudit out;
  double worst = -kInf;
  for (std::size_t j = 0; j + 1 < trace.entries.size(); ++j) {
    if (!consecutive(trace, j)) continue;
    const TraceEntry& a = trace.entries[j];
    const TraceEntry& b = trace.entries[j + 1];
    const double delta = delta_coeff(a.gamma, l);
    out.ell = std::max(out.ell, trace_epsilon(trace, j) * (1.0 / delta + 2.0 / nu));
    if (a.lyapunov < cutoff) continue;
    worst = std::max(worst, b.lyapunov / a.lyapunov - omega_from_ell(out.ell));
    ++out.checked;
  }
  out.max_excess = out.checked > 0 ? worst : 0.0;
  if (out.ell > 0.0) out.omega = omega_from_ell(out.ell);
  return out;
}

RateEstimate fit_rate(const Series& series, RateModel model, const FitOptions& opts) {
  require(!series.empty(), "fit_rate: empty series");
  double k_lo = 0.0;
  double k_hi = kInf;
  if (opts.window) {
    k_lo = opts.window->first;
    k_hi = opts.window->second;
    require(k_lo <= k_hi, "fit_rate: window must satisfy k_lo <= k_hi");
  } else {
    require(opts.burn_in_fraction >= 0.0 && opts.burn_in_fraction < 1.0,
            "fit_rate: burn_in_fraction must be in [0, 1)");
    double k_max = -kInf;
    for (const auto& [k, v] : series) k_max = std::max(k_max, k);
    k_lo = opts.burn_in_fraction * k_max;
  }
  std::vector<double> xs;
  std::vector<double> ys;
  double first = kInf;
  double last = -kInf;
  for (const auto& [k, v] : series) {
    if (k < k_lo || k > k_hi) continue;
    require(v > 0.0 && std::isfinite(v), "fit_rate: values must be strictly positive and finite");
    if (model == RateModel::sublinear_power) require(k > 0.0, "fit_rate: power fit needs k > 0");
    xs.push_back(model == RateModel::sublinear_power ? std::log(k) : k);
    ys.push_back(std::log(v));
    first = std::min(first, k);
    last = std::max(last, k);
  }
  require(xs.size() >= 10, "fit_rate: need at least 10 points in the window (got " +
                               std::to_string(xs.size()) + ")");
  const auto n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  require(sxx > 0.0, "fit_rate: window has a single distinct k");
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + slope * xs[i]);
    ss += r * r;
  }
  RateEstimate est;
  est.model = model;
  est.exponent_or_ratio = model == RateModel::sublinear_power ? -slope : std::exp(slope);
  est.fit_residual = std::sqrt(ss / n);
  est.window = {first, last};
  est.points = xs.size();
  return est;
}

Series truncate_below(const Series& series, double floor) {
  Series out;
  for (const auto& p : series) {
    if (!(p.second >= floor)) break;
    out.push_back(p);
  }
  return out;
}

std::vector<double> running_min(const std::vector<double>& series) {
  require(!series.empty(), "running_min: empty series");
  std::vector<double> out(series.size());
  double m = kInf;
  for (std::size_t i = 0; i < series.size(); ++i) {
    m = std::min(m, series[i]);
    out[i] = m;
  }
  return out;
}

Series column(const Trace& trace, double TraceEntry::*field) {
  Series out;
  out.reserve(trace.entries.size());
  for (const auto& e : trace.entries) out.emplace_back(static_cast<double>(e.k), e.*field);
  return out;
}

Series seed_mean(const std::vector<Trace>& traces, double TraceEntry::*field) {
  require(!traces.empty(), "seed_mean: no traces");
  const std::size_t len = traces.front().entries.size();
  Series out(len);
  for (std::size_t j = 0; j < len; ++j) out[j].first = static_cast<double>(traces.front().entries[j].k);
  for (const auto& t : traces) {
    require(t.entries.size() == len, "seed_mean: traces differ in length");
    for (std::size_t j = 0; j < len; ++j) {
      require(static_cast<double>(t.entries[j].k) == out[j].first, "seed_mean: traces differ in k");
      out[j].second += t.entries[j].*field;
    }
  }
  for (auto& p : out) p.second /= static_cast<double>(traces.size());
  return out;
}

double expectation_audit(const std::vector<Trace>& traces) {
  const Series slack = seed_mean(traces, &TraceEntry::descent_slack);
  const Series f = seed_mean(traces, &TraceEntry::F);
  const double norm = 1.0 + std::abs(f.front().second);
  double worst = 0.0;
  for (std::size_t j = 1; j < slack.size(); ++j) worst = std::min(worst, slack[j].second / norm);
  return worst;
}

namespace {

Series in_range(const Series& series, double k_lo, double k_hi) {
  Series out;
  for (const auto& p : series)
    if (p.first >= k_lo && p.first <= k_hi) out.push_back(p);
  std::sort(out.begin(), out.end());
  require(!out.empty(), "no points in the requested k range");
  return out;
}

}  // namespace

double k_times_bound_ratio(const Series& series, double k_lo, double k_hi) {
  const Series pts = in_range(series, k_lo, k_hi);
  const double base = pts.front().first * pts.front().second;
  require(base > 0.0, "k_times_bound_ratio: first value in range must be positive");
  double best = 0.0;
  for (const auto& [k, v] : pts) best = std::max(best, k * v);
  return best / base;
}

double k_times_increase(const Series& series, double k_lo, double k_hi) {
  const Series pts = in_range(series, k_lo, k_hi);
  require(pts.size() >= 2, "k_times_increase: need at least 2 points in range");
  const double base = pts.front().first * pts.front().second;
  require(base > 0.0, "k_times_increase: first value in range must be positive");
  double worst = -kInf;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    worst = std::max(worst, pts[i + 1].first * pts[i + 1].second - pts[i].first * pts[i].second);
  return worst / base;
}

double geometric_envelope_ratio(const Series& series, double rho, double k_ref) {
  require(rho > 0.0 && rho < 1.0, "geometric_envelope_ratio: rho must be in (0, 1)");
  const Series pts = in_range(series, k_ref, kInf);
  const double v_ref = pts.front().second;
  require(v_ref > 0.0, "geometric_envelope_ratio: reference value must be positive");
  const double k0 = pts.front().first;
  double worst = 0.0;
  for (const auto& [k, v] : pts) worst = std::max(worst, v / v_ref * std::exp((k0 - k) * std::log(rho)));
  return worst;
}

}  // namespace pigd
