#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gausstomo/random.hpp"
#include "gausstomo/state.hpp"

namespace gausstomo::harness {

enum class Experiment { Surface, Regions, LambdaCrit, Simulate, Estimate, CrbAttainment, Fig5 };
enum class OutputFormat { Csv, Json };

std::string to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

/// Invalid or incomplete configuration (CLI exit code 2).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Output could not be read or written (CLI exit code 2).
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GridConfig {
  std::vector<double> lambda;
  std::vector<double> mu;
  std::vector<double> eta;
};

/// Experiment description as read from JSON and flags. Unset optionals take
/// per-experiment defaults in `resolve`.
struct ExperimentConfig {
  Experiment experiment = Experiment::Surface;
  std::optional<GaussianStateSpec> spec;
  std::optional<GridConfig> grid;
  std::optional<std::string> mode;  // surface: real | hypothetical | both
  std::optional<std::size_t> n;
  std::optional<std::vector<std::size_t>> n_values;
  std::optional<std::size_t> trials;
  std::optional<SeedSpec> seed;
  std::optional<std::string> scheme;
  std::optional<std::string> angle_policy;
  std::optional<int> samples;
  std::optional<std::vector<double>> eta_values;
  std::optional<std::string> input;
  OutputFormat format = OutputFormat::Csv;

  // Execution settings; never embedded in outputs.
  std::string output_path;
  int threads = 1;
};

/// Strict parse: unknown keys and wrong types throw ConfigError. Accepts a
/// previously produced JSON envelope ({"toolkit", "config", ...}) as well.
ExperimentConfig parse_config(const nlohmann::json& j);

/// Fills defaults for the chosen experiment and validates every required
/// field before any computation. Throws ConfigError.
ExperimentConfig resolve(ExperimentConfig config);

/// Resolved config as JSON, without output path and thread count.
nlohmann::json provenance_json(const ExperimentConfig& resolved);

/// Reads a config file: plain JSON, a JSON output envelope, or a CSV output
/// whose "# config: " line holds the embedded config.
ExperimentConfig load_config_file(const std::string& path);

inline constexpr SeedSpec kDefaultSeed{20240611, 0};

}  // namespace gausstomo::harness
