#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "experiment.hpp"

using namespace pigd;
using namespace pigd::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / ("pigd_cli_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string first_line(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

const char* kQuadratic = R"({
  "schema_version": 1,
  "instance": {"kind": "quadratic", "n": 8, "conditioning": 10, "seed": 3},
  "algorithm": "pigd",
  "schedule": {"beta0": 0.5, "c": 0.9},
  "run": {"max_iters": 300},
  "audits": ["descent", "lyapunov", "lemma5", "rates"],
  "rates": {"model": "geometric", "column": "lyapunov", "floor": 1e-12}
})";

std::string config_error_path(const std::string& text) {
  try {
    (void)parse_experiment(text);
  } catch (const ConfigError& e) {
    return e.path();
  }
  return "<none>";
}

}  // namespace

TEST_CASE("trace CSV header and byte-identical reruns") {
  const ExperimentConfig cfg = parse_experiment(kQuadratic);
  const auto a = scratch("a");
  const auto b = scratch("b");
  run_experiment(cfg, a);
  run_experiment(cfg, b);
  CHECK(first_line(a / "trace.csv") == "k,F,lyapunov,step_sq,residual_sq,descent_slack");
  CHECK(read_file(a / "trace.csv") == read_file(b / "trace.csv"));
  CHECK(read_file(a / "summary.json") == read_file(b / "summary.json"));
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("summary reports audits and a geometric ratio below one") {
  const auto out = scratch("summary");
  run_experiment(parse_experiment(kQuadratic), out);
  const auto doc = nlohmann::json::parse(read_file(out / "summary.json"));
  CHECK(doc.at("schema_version") == 1);
  CHECK(doc.at("algorithm") == "pigd");
  CHECK(doc.at("f_star").get<double>() == 0.0);
  CHECK(doc.at("audits").at("descent_max_violation_rel").get<double>() >= -1e-12);
  CHECK(doc.at("audits").at("lyapunov_max_increase_rel").get<double>() <= 1e-12);
  CHECK(doc.at("audits").at("lemma5_max_violation_rel").get<double>() >= -1e-8);
  const double ratio = doc.at("rates").at(0).at("exponent_or_ratio").get<double>();
  CHECK(ratio > 0.0);
  CHECK(ratio < 1.0);
  const Series col = read_csv_column(out / "trace.csv", "lyapunov");
  CHECK(col.size() == 301);
  std::filesystem::remove_all(out);
}

TEST_CASE("stochastic runs write per-seed and mean traces") {
  const auto out = scratch("stoch");
  const ExperimentConfig cfg = parse_experiment(R"({
    "schema_version": 1,
    "instance": {"kind": "quadratic", "n": 8, "blocks": 4, "seed": 3},
    "algorithm": "stochastic",
    "schedule": {"beta0": 0.5},
    "run": {"max_iters": 50},
    "seeds": [1, 2],
    "audits": ["descent"]
  })");
  CHECK(cfg.schedule.m == 4);
  run_experiment(cfg, out);
  CHECK(std::filesystem::exists(out / "trace_seed_1.csv"));
  CHECK(std::filesystem::exists(out / "trace_seed_2.csv"));
  CHECK(first_line(out / "trace_mean.csv") == kTraceHeader);
  std::filesystem::remove_all(out);
}

TEST_CASE("sweep writes one directory per grid point") {
  const auto out = scratch("sweep");
  ExperimentConfig cfg = parse_experiment(kQuadratic);
  cfg.audits.clear();
  cfg.sweep.c = {0.5, 0.9};
  cfg.sweep.beta0 = {0.0, 0.3};
  CHECK(run_sweep(cfg, out, 2) == 0);
  CHECK(std::filesystem::exists(out / "c=0.5_beta0=0.3_theta=1.5" / "trace.csv"));
  CHECK(std::filesystem::exists(out / "sweep.json"));
  std::filesystem::remove_all(out);
}

TEST_CASE("config errors name the offending field") {
  CHECK(config_error_path(R"({"schema_version": 1, "instance": {"kind": "quadratic", "size": 3}})") == "instance.size");
  CHECK(config_error_path(R"({"schema_version": 2, "instance": {"kind": "quadratic"}})") == "schema_version");
  CHECK(config_error_path(R"({"schema_version": 1})") == "instance");
  CHECK(config_error_path(R"({"schema_version": 1, "instance": {"kind": "ridge"}})") == "instance.kind");
  CHECK(config_error_path(R"({"schema_version": 1, "instance": {"kind": "quadratic"}, "schedule": {"c": 1.5}})") ==
        "schedule");
  CHECK(config_error_path(R"({"schema_version": 1, "instance": {"kind": "quadratic"}, "algorithm": "stochastic"})") ==
        "seeds");
  CHECK(config_error_path(
            R"({"schema_version": 1, "instance": {"kind": "quadratic"}, "algorithm": "prox_grad_baseline", "schedule": {"beta0": 0.3}})") ==
        "schedule.beta0");
  CHECK(config_error_path(R"({"schema_version": 1, "instance": {"kind": "quadratic"}, "audits": ["lemma5"], "run": {"record_every": 2}})") ==
        "run.record_every");
  CHECK(config_error_path(R"({"schema_version": 1, "instance": {"kind": "quadratic"}, "audits": ["speed"]})") == "audits[0]");
  CHECK(config_error_path("{not json") == "<root>");
}

TEST_CASE("prox_grad_baseline runs with beta zero") {
  const ExperimentConfig cfg =
      parse_experiment(R"({"schema_version": 1, "instance": {"kind": "quadratic"}, "algorithm": "prox_grad_baseline"})");
  CHECK(cfg.schedule.beta0 == 0.0);
  CHECK(cfg.schedule.variant == Variant::full);
}

TEST_CASE("number formatting") {
  CHECK(format_short(0.5) == "0.5");
  CHECK(format_short(1.5) == "1.5");
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("ODE experiment output") {
  const auto out = scratch("ode");
  const OdeConfig cfg = parse_ode(R"({
    "schema_version": 1,
    "instance": {"kind": "quadratic", "n": 2, "conditioning": 4},
    "x0": [1], "v0": [1], "alpha": 1, "h": 0.01, "t_end": 1, "theta": 1
  })");
  CHECK(cfg.x0.size() == 2);
  run_ode(cfg, out);
  CHECK(first_line(out / "ode.csv") == "t,xi_f,speed_sq,accel_ratio");
  CHECK(std::filesystem::exists(out / "summary.json"));
  std::filesystem::remove_all(out);
}
