#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "experiment.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::filesystem::path resolve_out(const std::string& flag, const std::string& from_config) {
  if (!flag.empty()) return flag;
  if (!from_config.empty()) return from_config;
  throw pigd::cli::ConfigError("output_dir", "missing (set it in the config or pass --out)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Proximal inertial gradient descent experiments"};
  app.require_subcommand(1);

  std::string config;
  std::string out;
  std::size_t workers = 1;
  std::uint64_t seed_offset = 0;

  auto* run = app.add_subcommand("run", "Run one experiment config");
  run->add_option("--config", config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory (overrides output_dir)");
  run->add_option("--seed-offset", seed_offset, "Added to every seed");

  auto* sweep = app.add_subcommand("sweep", "Grid over c, beta0 and theta");
  sweep->add_option("--config", config, "Experiment config with a sweep section")->required()->check(CLI::ExistingFile);
  sweep->add_option("--out", out, "Output directory (overrides output_dir)");
  sweep->add_option("--workers", workers, "Concurrent runs")->check(CLI::PositiveNumber);
  sweep->add_option("--seed-offset", seed_offset, "Added to every seed");

  auto* ode = app.add_subcommand("ode", "Integrate the heavy-ball ODE and audit it");
  ode->add_option("--config", config, "ODE config (JSON)")->required()->check(CLI::ExistingFile);
  ode->add_option("--out", out, "Output directory (overrides output_dir)");

  std::string csv;
  std::string column = "lyapunov";
  std::string model = "sublinear_power";
  std::vector<double> window;
  double burn_in = 0.1;
  double floor = 1e-14;
  double f_star = 0.0;
  auto* rates = app.add_subcommand("rates", "Re-fit a rate from an existing trace CSV");
  rates->add_option("--csv", csv, "Trace CSV")->required()->check(CLI::ExistingFile);
  rates->add_option("--column", column, "Column to fit");
  rates->add_option("--model", model, "sublinear_power or geometric")
      ->check(CLI::IsMember({"sublinear_power", "geometric"}));
  rates->add_option("--window", window, "k_lo k_hi")->expected(2);
  rates->add_option("--burn-in", burn_in, "Burn-in fraction when no window is given");
  rates->add_option("--floor", floor, "Truncate at the first value below floor*(1+|f_star|)");
  rates->add_option("--f-star", f_star, "F* used to scale the floor");
  rates->add_option("--out", out, "Write rates.json here instead of stdout");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto cfg = pigd::cli::parse_experiment(pigd::cli::read_file(config));
      pigd::cli::run_experiment(cfg, resolve_out(out, cfg.output_dir), seed_offset);
    } else if (*sweep) {
      const auto cfg = pigd::cli::parse_experiment(pigd::cli::read_file(config));
      const auto failures = pigd::cli::run_sweep(cfg, resolve_out(out, cfg.output_dir), workers, seed_offset);
      if (failures > 0) {
        std::cerr << failures << " sweep point(s) failed; see sweep.json\n";
        return 1;
      }
    } else if (*ode) {
      const auto cfg = pigd::cli::parse_ode(pigd::cli::read_file(config));
      pigd::cli::run_ode(cfg, resolve_out(out, cfg.output_dir));
    } else if (*rates) {
      pigd::cli::RateConfig rc;
      rc.column = column;
      rc.model = model == "geometric" ? pigd::RateModel::geometric : pigd::RateModel::sublinear_power;
      if (window.size() == 2) rc.window = std::make_pair(window[0], window[1]);
      rc.burn_in_fraction = burn_in;
      rc.floor = floor;
      const auto est = pigd::cli::refit(pigd::cli::read_csv_column(csv, column), rc, f_star);
      nlohmann::ordered_json j;
      j["model"] = model;
      j["column"] = column;
      j["exponent_or_ratio"] = est.exponent_or_ratio;
      j["fit_residual"] = est.fit_residual;
      j["window"] = {est.window.first, est.window.second};
      j["points"] = est.points;
      if (out.empty()) {
        std::cout << j.dump(2) << '\n';
      } else {
        std::filesystem::create_directories(out);
        std::ofstream(std::filesystem::path(out) / "rates.json") << j.dump(2) << '\n';
      }
    }
  } catch (const pigd::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pigd::ContractViolation& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const pigd::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
