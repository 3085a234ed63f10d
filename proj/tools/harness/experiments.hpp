#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gausstomo/covariance.hpp"
#include "gausstomo/state.hpp"
#include "harness/config.hpp"

namespace gausstomo::harness {

using Cell = std::variant<double, std::int64_t, std::string, bool>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct ExperimentOutput {
  Table table;
  /// Extra JSON-envelope members (ignored by CSV output).
  nlohmann::json extra = nlohmann::json::object();
  /// Sidecar written next to CSV output as "<out>.json" (simulate only).
  nlohmann::json sidecar;
  /// Non-fatal findings, reported on stderr by the CLI.
  std::vector<std::string> warnings;
};

struct TrialRecord {
  std::size_t trial_index = 0;
  std::size_t n = 0;
  SchemeKind scheme = SchemeKind::Homodyne;
  double hs_distance_sq = 0.0;
  bool converged = false;
  Covariance2 g_wigner;
};

/// Numerical failure inside an experiment (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Each run_* expects a config already passed through resolve().
ExperimentOutput run_surface(const ExperimentConfig& config);
ExperimentOutput run_regions(const ExperimentConfig& config);
ExperimentOutput run_lambda_crit(const ExperimentConfig& config);
ExperimentOutput run_simulate(const ExperimentConfig& config);
ExperimentOutput run_estimate(const ExperimentConfig& config);
ExperimentOutput run_crb_attainment(const ExperimentConfig& config);
ExperimentOutput run_fig5(const ExperimentConfig& config);

ExperimentOutput run_experiment(const ExperimentConfig& config);

/// CSV (comment lines with toolkit version and config, header, rows) or a
/// JSON envelope, depending on config.format.
std::string render(const ExperimentConfig& config, const ExperimentOutput& output);

/// Resolves, runs, renders and writes to config.output_path (stdout when
/// empty). Returns the rendered text.
std::string execute(const ExperimentConfig& config);

/// Monte Carlo trials of one scheme at one N; trial t uses a stream derived
/// from (seed, scheme, N, t) so the result is independent of `threads`.
std::vector<TrialRecord> run_trials(const GaussianStateSpec& spec, SchemeKind scheme, std::size_t n,
                                    std::size_t trials, const SeedSpec& seed, const std::string& angle_policy,
                                    int threads);

std::string toolkit_version();

}  // namespace gausstomo::harness
