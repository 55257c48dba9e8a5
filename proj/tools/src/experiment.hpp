#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <pigd/pigd.hpp>

namespace pigd::cli {

inline constexpr int kSchemaVersion = 1;

/// Config problem, reported with the JSON path of the offending field.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Algorithm { pigd, cyclic, stochastic, prox_grad_baseline };
enum class Audit { descent, lemma5, lyapunov, rates };

struct RateConfig {
  RateModel model = RateModel::sublinear_power;
  std::string column = "lyapunov";
  std::optional<std::pair<double, double>> window;
  double burn_in_fraction = 0.1;
  double floor = 1e-14;  // values below floor·(1 + |F*|) end the fitted series
};

struct SweepGrid {
  std::vector<double> c;
  std::vector<double> beta0;
  std::vector<double> theta;
};

struct ExperimentConfig {
  InstanceSpec instance;
  Algorithm algorithm = Algorithm::pigd;
  ParamSchedule schedule;
  RunConfig run;
  std::vector<std::uint64_t> seeds;
  std::set<Audit> audits;
  RateConfig rates;
  std::optional<std::vector<double>> x0;  // zeros when absent
  std::string output_dir;
  std::string reference_cache;  // defaults to <output_dir>/reference_cache
  SweepGrid sweep;
};

struct OdeConfig {
  InstanceSpec instance;
  std::vector<double> x0;  // one entry broadcasts to all coordinates
  std::vector<double> v0;
  double alpha = 1.0;
  double h = 1e-3;
  double t_end = 5.0;
  double theta = 1.0;
  std::string output_dir;
};

ExperimentConfig parse_experiment(const std::string& json_text);
OdeConfig parse_ode(const std::string& json_text);
std::string read_file(const std::filesystem::path& path);

std::string to_string(Algorithm a);

/// Shortest text that round-trips to the same double, e.g. for directory names.
std::string format_short(double v);
/// 17 significant digits, as written to every CSV.
std::string format_double(double v);

inline constexpr const char* kTraceHeader = "k,F,lyapunov,step_sq,residual_sq,descent_slack";

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceEntry>& entries);

/// Seed-mean of every CSV column; traces must share their k sequence.
std::vector<TraceEntry> mean_entries(const std::vector<Trace>& traces);

/// Runs one configured experiment and writes its CSVs and summary.json into
/// out_dir. seed_offset is added to every seed.
void run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                    std::uint64_t seed_offset = 0);

/// Grid over the sweep's c, beta0 and theta lists, one subdirectory per point,
/// spread over `workers` threads. Returns the number of failed grid points.
std::size_t run_sweep(const ExperimentConfig& cfg, const std::filesystem::path& out_dir,
                      std::size_t workers, std::uint64_t seed_offset = 0);

void run_ode(const OdeConfig& cfg, const std::filesystem::path& out_dir);

/// Reads one column of a trace CSV as (k, value) pairs.
Series read_csv_column(const std::filesystem::path& path, const std::string& column);

/// Fit of a CSV column with the same truncation rules as run summaries.
RateEstimate refit(const Series& series, const RateConfig& rates, double f_star);

}  // namespace pigd::cli
