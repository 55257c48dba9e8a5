#include "experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace pigd::cli {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

// ---- config reading -------------------------------------------------------

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

void check_keys(const json& obj, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  for (const auto& [key, value] : obj.items()) {
    const bool known = std::any_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; });
    if (!known) throw ConfigError(join(path, key), "unknown key");
  }
}

double get_number(const json& obj, const std::string& path, const char* key, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(join(path, key), "expected a number");
  return v.get<double>();
}

std::uint64_t get_uint(const json& obj, const std::string& path, const char* key, std::uint64_t fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_unsigned()) throw ConfigError(join(path, key), "expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

std::string get_string(const json& obj, const std::string& path, const char* key, const std::string& fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_string()) throw ConfigError(join(path, key), "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& obj, const std::string& path, const char* key) {
  std::vector<double> out;
  if (!obj.contains(key)) return out;
  const json& v = obj.at(key);
  const std::string p = join(path, key);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw ConfigError(p, "expected a number or an array of numbers");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ConfigError(p + "[" + std::to_string(i) + "]", "expected a number");
    out.push_back(v[i].get<double>());
  }
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
}

void check_schema(const json& root) {
  if (!root.is_object()) throw ConfigError("<root>", "expected an object");
  if (!root.contains("schema_version")) throw ConfigError("schema_version", "missing");
  if (!root.at("schema_version").is_number_integer() || root.at("schema_version").get<int>() != kSchemaVersion)
    throw ConfigError("schema_version", "unsupported version (expected " + std::to_string(kSchemaVersion) + ")");
}

InstanceSpec parse_instance(const json& obj, const std::string& path) {
  check_keys(obj, path, {"kind", "n", "rows", "reg_lambda", "blocks", "seed", "conditioning", "rank_deficiency"});
  InstanceSpec spec;
  if (!obj.contains("kind")) throw ConfigError(join(path, "kind"), "missing");
  try {
    spec.kind = parse_instance_kind(get_string(obj, path, "kind", ""));
  } catch (const ContractViolation& e) {
    throw ConfigError(join(path, "kind"), e.what());
  }
  spec.n = static_cast<Index>(get_uint(obj, path, "n", static_cast<std::uint64_t>(spec.n)));
  spec.rows = static_cast<Index>(get_uint(obj, path, "rows", 0));
  spec.reg_lambda = get_number(obj, path, "reg_lambda", spec.reg_lambda);
  spec.blocks = get_uint(obj, path, "blocks", spec.blocks);
  spec.seed = get_uint(obj, path, "seed", spec.seed);
  spec.conditioning = get_number(obj, path, "conditioning", spec.conditioning);
  spec.rank_deficiency =
      static_cast<Index>(get_uint(obj, path, "rank_deficiency", static_cast<std::uint64_t>(spec.rank_deficiency)));
  try {
    validate(spec);
  } catch (const ContractViolation& e) {
    throw ConfigError(path, e.what());
  }
  return spec;
}

Algorithm parse_algorithm(const std::string& s, const std::string& path) {
  if (s == "pigd") return Algorithm::pigd;
  if (s == "cyclic") return Algorithm::cyclic;
  if (s == "stochastic") return Algorithm::stochastic;
  if (s == "prox_grad_baseline") return Algorithm::prox_grad_baseline;
  throw ConfigError(path, "unknown algorithm '" + s + "'");
}

Variant variant_of(Algorithm a) {
  switch (a) {
    case Algorithm::cyclic: return Variant::cyclic;
    case Algorithm::stochastic: return Variant::stochastic;
    default: return Variant::full;
  }
}

ParamSchedule parse_schedule(const json& obj, const std::string& path) {
  check_keys(obj, path, {"beta_rule", "beta0", "theta", "c", "stochastic_regime", "gamma0_fraction"});
  ParamSchedule s;
  const std::string rule = get_string(obj, path, "beta_rule", "constant");
  if (rule == "constant") s.beta_rule = BetaRule::constant;
  else if (rule == "diminishing") s.beta_rule = BetaRule::diminishing;
  else throw ConfigError(join(path, "beta_rule"), "expected 'constant' or 'diminishing'");
  s.beta0 = get_number(obj, path, "beta0", s.beta0);
  s.theta = get_number(obj, path, "theta", s.theta);
  s.c = get_number(obj, path, "c", s.c);
  const std::string regime = get_string(obj, path, "stochastic_regime", "descent");
  if (regime == "descent") s.stochastic_regime = StochasticRegime::descent;
  else if (regime == "linear") s.stochastic_regime = StochasticRegime::linear;
  else throw ConfigError(join(path, "stochastic_regime"), "expected 'descent' or 'linear'");
  s.gamma0_fraction = get_number(obj, path, "gamma0_fraction", s.gamma0_fraction);
  return s;
}

RunConfig parse_run(const json& obj, const std::string& path) {
  check_keys(obj, path, {"max_iters", "record_every", "stop_tol", "seed"});
  RunConfig r;
  r.max_iters = get_uint(obj, path, "max_iters", r.max_iters);
  r.record_every = get_uint(obj, path, "record_every", r.record_every);
  r.stop_tol = get_number(obj, path, "stop_tol", r.stop_tol);
  r.seed = get_uint(obj, path, "seed", r.seed);
  try {
    validate(r);
  } catch (const ContractViolation& e) {
    throw ConfigError(path, e.what());
  }
  return r;
}

RateConfig parse_rates(const json& obj, const std::string& path) {
  check_keys(obj, path, {"model", "column", "window", "burn_in_fraction", "floor"});
  RateConfig r;
  const std::string model = get_string(obj, path, "model", "sublinear_power");
  if (model == "sublinear_power") r.model = RateModel::sublinear_power;
  else if (model == "geometric") r.model = RateModel::geometric;
  else throw ConfigError(join(path, "model"), "expected 'sublinear_power' or 'geometric'");
  r.column = get_string(obj, path, "column", r.column);
  static const std::set<std::string> columns = {"F", "lyapunov", "step_sq", "residual_sq"};
  if (!columns.count(r.column)) throw ConfigError(join(path, "column"), "unknown column '" + r.column + "'");
  if (obj.contains("window")) {
    const auto w = get_number_list(obj, path, "window");
    if (w.size() != 2 || w[0] > w[1]) throw ConfigError(join(path, "window"), "expected [k_lo, k_hi] with k_lo <= k_hi");
    r.window = std::make_pair(w[0], w[1]);
  }
  r.burn_in_fraction = get_number(obj, path, "burn_in_fraction", r.burn_in_fraction);
  r.floor = get_number(obj, path, "floor", r.floor);
  return r;
}

std::vector<double> broadcast(const std::vector<double>& v, Index n, const std::string& path) {
  if (v.size() == 1) return std::vector<double>(static_cast<std::size_t>(n), v[0]);
  if (static_cast<Index>(v.size()) != n)
    throw ConfigError(path, "expected 1 or " + std::to_string(n) + " entries");
  return v;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::pigd: return "pigd";
    case Algorithm::cyclic: return "cyclic";
    case Algorithm::stochastic: return "stochastic";
    case Algorithm::prox_grad_baseline: return "prox_grad_baseline";
  }
  return "?";
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

ExperimentConfig parse_experiment(const std::string& json_text) {
  const json root = parse_json(json_text);
  check_schema(root);
  check_keys(root, "", {"schema_version", "instance", "algorithm", "schedule", "run", "seeds", "audits",
                        "rates", "x0", "output_dir", "reference_cache", "sweep"});
  ExperimentConfig cfg;
  if (!root.contains("instance")) throw ConfigError("instance", "missing");
  cfg.instance = parse_instance(root.at("instance"), "instance");
  cfg.algorithm = parse_algorithm(get_string(root, "", "algorithm", "pigd"), "algorithm");
  cfg.schedule = root.contains("schedule") ? parse_schedule(root.at("schedule"), "schedule") : ParamSchedule{};
  cfg.schedule.variant = variant_of(cfg.algorithm);
  cfg.schedule.m = cfg.instance.blocks;
  if (cfg.algorithm == Algorithm::prox_grad_baseline) {
    if (root.contains("schedule") && root.at("schedule").contains("beta0") && cfg.schedule.beta0 != 0.0)
      throw ConfigError("schedule.beta0", "prox_grad_baseline runs with beta = 0");
    cfg.schedule.beta_rule = BetaRule::constant;
    cfg.schedule.beta0 = 0.0;
  }
  try {
    validate(cfg.schedule);
  } catch (const ContractViolation& e) {
    throw ConfigError("schedule", e.what());
  }
  cfg.run = root.contains("run") ? parse_run(root.at("run"), "run") : RunConfig{};
  if (root.contains("seeds")) {
    const json& s = root.at("seeds");
    if (!s.is_array()) throw ConfigError("seeds", "expected an array of integers");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!s[i].is_number_unsigned()) throw ConfigError("seeds[" + std::to_string(i) + "]", "expected a nonnegative integer");
      cfg.seeds.push_back(s[i].get<std::uint64_t>());
    }
  }
  if (cfg.algorithm == Algorithm::stochastic && cfg.seeds.empty())
    throw ConfigError("seeds", "stochastic runs need a nonempty seed list");
  if (root.contains("audits")) {
    const json& a = root.at("audits");
    if (!a.is_array()) throw ConfigError("audits", "expected an array of strings");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string p = "audits[" + std::to_string(i) + "]";
      if (!a[i].is_string()) throw ConfigError(p, "expected a string");
      const std::string name = a[i].get<std::string>();
      if (name == "descent") cfg.audits.insert(Audit::descent);
      else if (name == "lemma5") cfg.audits.insert(Audit::lemma5);
      else if (name == "lyapunov") cfg.audits.insert(Audit::lyapunov);
      else if (name == "rates") cfg.audits.insert(Audit::rates);
      else throw ConfigError(p, "unknown audit '" + name + "'");
    }
  }
  if (cfg.audits.count(Audit::lemma5)) {
    if (cfg.algorithm == Algorithm::stochastic)
      throw ConfigError("audits", "lemma5 audit applies to full and cyclic runs only");
    if (cfg.run.record_every != 1) throw ConfigError("run.record_every", "lemma5 audit needs record_every = 1");
  }
  if (root.contains("rates")) cfg.rates = parse_rates(root.at("rates"), "rates");
  if (root.contains("x0")) cfg.x0 = broadcast(get_number_list(root, "", "x0"), cfg.instance.n, "x0");
  cfg.output_dir = get_string(root, "", "output_dir", "");
  cfg.reference_cache = get_string(root, "", "reference_cache", "");
  if (root.contains("sweep")) {
    const json& s = root.at("sweep");
    check_keys(s, "sweep", {"c", "beta0", "theta"});
    cfg.sweep.c = get_number_list(s, "sweep", "c");
    cfg.sweep.beta0 = get_number_list(s, "sweep", "beta0");
    cfg.sweep.theta = get_number_list(s, "sweep", "theta");
  }
  return cfg;
}

OdeConfig parse_ode(const std::string& json_text) {
  const json root = parse_json(json_text);
  check_schema(root);
  check_keys(root, "", {"schema_version", "instance", "x0", "v0", "alpha", "h", "t_end", "theta", "output_dir"});
  OdeConfig cfg;
  if (!root.contains("instance")) throw ConfigError("instance", "missing");
  cfg.instance = parse_instance(root.at("instance"), "instance");
  if (cfg.instance.kind != InstanceKind::quadratic && cfg.instance.kind != InstanceKind::noncoercive_quadratic)
    throw ConfigError("instance.kind", "the ODE lab needs a smooth quadratic kind");
  const Index n = cfg.instance.n;
  cfg.x0 = root.contains("x0") ? broadcast(get_number_list(root, "", "x0"), n, "x0")
                               : std::vector<double>(static_cast<std::size_t>(n), 1.0);
  cfg.v0 = root.contains("v0") ? broadcast(get_number_list(root, "", "v0"), n, "v0")
                               : std::vector<double>(static_cast<std::size_t>(n), 0.0);
  cfg.alpha = get_number(root, "", "alpha", cfg.alpha);
  cfg.h = get_number(root, "", "h", cfg.h);
  cfg.t_end = get_number(root, "", "t_end", cfg.t_end);
  cfg.theta = get_number(root, "", "theta", cfg.theta);
  if (!(cfg.alpha > 0.0)) throw ConfigError("alpha", "must be positive");
  if (!(cfg.h > 0.0)) throw ConfigError("h", "must be positive");
  if (!(cfg.t_end > 0.0)) throw ConfigError("t_end", "must be positive");
  if (!(cfg.theta > 0.0)) throw ConfigError("theta", "must be positive");
  cfg.output_dir = get_string(root, "", "output_dir", "");
  return cfg;
}

// ---- output ---------------------------------------------------------------

std::string format_short(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceEntry>& entries) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << kTraceHeader << '\n';
  for (const auto& e : entries) {
    out << e.k << ',' << format_double(e.F) << ',' << format_double(e.lyapunov) << ','
        << format_double(e.step_sq) << ',' << format_double(e.residual_sq) << ','
        << format_double(e.descent_slack) << '\n';
  }
}

std::vector<TraceEntry> mean_entries(const std::vector<Trace>& traces) {
  require(!traces.empty(), "mean_entries: no traces");
  std::vector<TraceEntry> out;
  const std::size_t len = traces.front().entries.size();
  out.resize(len);
  const auto count = static_cast<double>(traces.size());
  for (std::size_t j = 0; j < len; ++j) {
    TraceEntry& m = out[j];
    m.k = traces.front().entries[j].k;
    for (const auto& t : traces) {
      require(t.entries.size() == len && t.entries[j].k == m.k, "mean_entries: traces differ in k");
      const TraceEntry& e = t.entries[j];
      m.F += e.F / count;
      m.lyapunov += e.lyapunov / count;
      m.step_sq += e.step_sq / count;
      m.residual_sq += e.residual_sq / count;
      m.descent_slack += e.descent_slack / count;
    }
  }
  return out;
}

namespace {

double TraceEntry::*column_member(const std::string& name) {
  if (name == "F") return &TraceEntry::F;
  if (name == "lyapunov") return &TraceEntry::lyapunov;
  if (name == "step_sq") return &TraceEntry::step_sq;
  if (name == "residual_sq") return &TraceEntry::residual_sq;
  if (name == "descent_slack") return &TraceEntry::descent_slack;
  throw ConfigError("rates.column", "unknown column '" + name + "'");
}

const char* model_name(RateModel m) {
  return m == RateModel::geometric ? "geometric" : "sublinear_power";
}

ojson rate_json(const RateEstimate& r) {
  ojson j;
  j["model"] = model_name(r.model);
  j["exponent_or_ratio"] = r.exponent_or_ratio;
  j["fit_residual"] = r.fit_residual;
  j["window"] = {r.window.first, r.window.second};
  j["points"] = r.points;
  return j;
}

void write_json(const std::filesystem::path& path, const ojson& doc) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << doc.dump(2) << '\n';
}

std::string hex_key(const std::string& key) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(key)));
  return buf;
}

Series series_of(const std::vector<TraceEntry>& entries, double TraceEntry::*field) {
  Series s;
  s.reserve(entries.size());
  for (const auto& e : entries) s.emplace_back(static_cast<double>(e.k), e.*field);
  return s;
}

}  // namespace

RateEstimate refit(const Series& series, const RateConfig& rates, double f_star) {
  Series pts;
  for (const auto& p : series)
    if (p.first > 0.0 || rates.model == RateModel::geometric) pts.push_back(p);
  pts = truncate_below(pts, rates.floor * (1.0 + std::abs(f_star)));
  FitOptions opts;
  opts.burn_in_fraction = rates.burn_in_fraction;
  opts.window = rates.window;
  return fit_rate(pts, rates.model, opts);
}

void run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::uint64_t seed_offset) {
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path cache_dir =
      cfg.reference_cache.empty() ? out_dir / "reference_cache" : std::filesystem::path(cfg.reference_cache);
  const ReferenceCache cache(cache_dir);
  const CompositeProblem problem = make_instance(cfg.instance, &cache);
  const Vector x0 = cfg.x0 ? Eigen::Map<const Vector>(cfg.x0->data(), static_cast<Index>(cfg.x0->size())).eval()
                           : Vector::Zero(problem.dim()).eval();
  RunConfig run = cfg.run;
  run.keep_iterates = cfg.audits.count(Audit::lemma5) > 0;

  std::vector<Trace> traces;
  if (cfg.algorithm == Algorithm::stochastic) {
    for (const auto seed : cfg.seeds) {
      run.seed = seed + seed_offset;
      traces.push_back(pigd::run(problem, cfg.schedule, x0, run));
      write_trace_csv(out_dir / ("trace_seed_" + std::to_string(run.seed) + ".csv"), traces.back().entries);
    }
    write_trace_csv(out_dir / "trace_mean.csv", mean_entries(traces));
  } else {
    run.seed = run.seed + seed_offset;
    traces.push_back(pigd::run(problem, cfg.schedule, x0, run));
    write_trace_csv(out_dir / "trace.csv", traces.back().entries);
  }

  const double f_star = problem.f_star().value_or(0.0);
  ojson summary;
  summary["schema_version"] = kSchemaVersion;
  summary["algorithm"] = to_string(cfg.algorithm);
  summary["instance_key"] = instance_key(cfg.instance);
  summary["reference_key"] = hex_key(instance_key(cfg.instance));
  if (problem.f_star()) summary["f_star"] = *problem.f_star();
  else summary["f_star"] = nullptr;
  summary["lipschitz"] = problem.lipschitz();
  summary["runs"] = traces.size();

  const std::vector<TraceEntry> entries =
      traces.size() == 1 ? traces.front().entries : mean_entries(traces);
  summary["final"] = {{"k", entries.back().k},
                      {"F", entries.back().F},
                      {"lyapunov", entries.back().lyapunov},
                      {"residual_sq", entries.back().residual_sq}};
  std::size_t below = 0;
  for (const auto& t : traces) below += t.f_star_violations;
  summary["f_star_violations"] = below;

  ojson audits = ojson::object();
  if (cfg.audits.count(Audit::descent) && entries.size() >= 2) {
    if (cfg.algorithm == Algorithm::stochastic) {
      audits["expectation_min_rel_slack"] = expectation_audit(traces);
    } else {
      audits["descent_max_violation"] = descent_audit(traces.front());
      audits["descent_max_violation_rel"] =
          descent_audit(traces.front()) / (1.0 + std::abs(traces.front().entries.front().F));
    }
  }
  if (cfg.audits.count(Audit::lyapunov) && entries.size() >= 2) {
    double worst = -kInf;
    for (const auto& t : traces) worst = std::max(worst, lyapunov_increase(t));
    audits["lyapunov_max_increase_rel"] = worst;
  }
  if (cfg.audits.count(Audit::lemma5)) {
    try {
      const AuditResult r = lemma5_audit(traces.front(), problem);
      audits["lemma5_max_violation_rel"] = r.max_violation;
      audits["lemma5_checked"] = r.checked;
    } catch (const UnsupportedOracle& e) {
      audits["lemma5_unsupported"] = e.what();
    }
  }
  summary["audits"] = audits;

  ojson rates = ojson::array();
  if (cfg.audits.count(Audit::rates)) {
    try {
      const RateEstimate r = refit(series_of(entries, column_member(cfg.rates.column)), cfg.rates, f_star);
      ojson j = rate_json(r);
      j["column"] = cfg.rates.column;
      rates.push_back(j);
    } catch (const ContractViolation& e) {
      rates.push_back({{"column", cfg.rates.column}, {"error", e.what()}});
    }
  }
  summary["rates"] = rates;
  write_json(out_dir / "summary.json", summary);
}

std::size_t run_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir, std::size_t workers,
                      std::uint64_t seed_offset) {
  const auto or_default = [](const std::vector<double>& v, double d) { return v.empty() ? std::vector<double>{d} : v; };
  const auto cs = or_default(cfg.sweep.c, cfg.schedule.c);
  const auto betas = or_default(cfg.sweep.beta0, cfg.schedule.beta0);
  const auto thetas = or_default(cfg.sweep.theta, cfg.schedule.theta);

  struct Point {
    ExperimentConfig cfg;
    std::string name;
  };
  std::vector<Point> points;
  for (double c : cs)
    for (double b : betas)
      for (double t : thetas) {
        Point p{cfg, "c=" + format_short(c) + "_beta0=" + format_short(b) + "_theta=" + format_short(t)};
        p.cfg.schedule.c = c;
        p.cfg.schedule.beta0 = b;
        p.cfg.schedule.theta = t;
        points.push_back(std::move(p));
      }

  std::filesystem::create_directories(out_dir);
  // Warm the shared reference cache once so workers only ever read it.
  const std::filesystem::path cache_dir =
      cfg.reference_cache.empty() ? out_dir / "reference_cache" : std::filesystem::path(cfg.reference_cache);
  {
    const ReferenceCache cache(cache_dir);
    (void)make_instance(cfg.instance, &cache);
  }

  std::vector<std::string> status(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < points.size(); i = next++) {
      ExperimentConfig pc = points[i].cfg;
      pc.reference_cache = cache_dir.string();
      try {
        validate(pc.schedule);
        run_experiment(pc, out_dir / points[i].name, seed_offset);
        status[i] = "ok";
      } catch (const std::exception& e) {
        status[i] = std::string("error: ") + e.what();
      }
    }
  };
  const std::size_t n_threads = std::max<std::size_t>(1, std::min(workers, points.size()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  ojson runs = ojson::array();
  std::size_t failures = 0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    runs.push_back({{"dir", points[i].name},
                    {"c", points[i].cfg.schedule.c},
                    {"beta0", points[i].cfg.schedule.beta0},
                    {"theta", points[i].cfg.schedule.theta},
                    {"status", status[i]}});
    if (status[i] != "ok") ++failures;
  }
  doc["runs"] = runs;
  write_json(out_dir / "sweep.json", doc);
  return failures;
}

void run_ode(const OdeConfig& cfg, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const CompositeProblem problem = make_instance(cfg.instance);
  const Vector x0 = Eigen::Map<const Vector>(cfg.x0.data(), static_cast<Index>(cfg.x0.size()));
  const Vector v0 = Eigen::Map<const Vector>(cfg.v0.data(), static_cast<Index>(cfg.v0.size()));
  const OdeTrace trace = simulate_heavy_ball(problem, x0, v0, cfg.alpha, cfg.h, cfg.t_end);
  const Vector x_star = problem.project_to_solutions(trace.samples.back().x);
  const OdeReport report = ode_audit(trace, cfg.theta, x_star);

  std::ofstream out(out_dir / "ode.csv", std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + (out_dir / "ode.csv").string());
  out << "t,xi_f,speed_sq,accel_ratio\n";
  for (const auto& s : trace.samples)
    out << format_double(s.t) << ',' << format_double(s.xi_f) << ',' << format_double(s.v.squaredNorm()) << ','
        << format_double(s.accel_ratio) << '\n';

  ojson doc;
  doc["schema_version"] = kSchemaVersion;
  doc["instance_key"] = instance_key(cfg.instance);
  doc["alpha"] = cfg.alpha;
  doc["h"] = cfg.h;
  doc["t_end"] = cfg.t_end;
  doc["theta"] = cfg.theta;
  doc["samples"] = trace.samples.size();
  doc["max_xi_increase"] = report.max_xi_increase;
  doc["radius"] = report.radius;
  doc["constraint_violation_fraction"] = report.constraint_violation;
  doc["bound_holds"] = report.bound_holds;
  doc["bound_min_slack"] = report.bound_min_slack;
  doc["literal_bound_holds"] = report.literal_holds;
  doc["literal_bound_min_slack"] = report.literal_min_slack;
  write_json(out_dir / "summary.json", doc);
}

Series read_csv_column(const std::filesystem::path& path, const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path.string(), "empty file");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  const auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) throw ConfigError(path.string(), "no column '" + column + "'");
  const auto col = static_cast<std::size_t>(it - header.begin());
  Series out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size())
      throw ConfigError(path.string() + ":" + std::to_string(row), "wrong number of fields");
    double k = 0.0;
    double v = 0.0;
    const auto rk = std::from_chars(cells[0].data(), cells[0].data() + cells[0].size(), k);
    const auto rv = std::from_chars(cells[col].data(), cells[col].data() + cells[col].size(), v);
    if (rk.ec != std::errc() || rv.ec != std::errc())
      throw ConfigError(path.string() + ":" + std::to_string(row), "not a number");
    out.emplace_back(k, v);
  }
  return out;
}

}  // namespace pigd::cli
