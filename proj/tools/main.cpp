#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "harness/config.hpp"
#include "harness/experiments.hpp"

namespace {

using namespace gausstomo;
using namespace gausstomo::harness;

int fail(const char* kind, const std::string& message, int code) {
  std::cerr << nlohmann::json{{"error", kind}, {"message", message}}.dump() << '\n';
  return code;
}

struct Overrides {
  std::optional<double> mu, lambda, phi, eta;
  std::optional<std::size_t> n, trials;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out, format, scheme, input, angle_policy;
  std::optional<int> threads;
};

void apply(const Overrides& o, ExperimentConfig& c) {
  auto spec = [&c]() -> GaussianStateSpec& {
    if (!c.spec) c.spec = GaussianStateSpec{};
    return *c.spec;
  };
  if (o.mu) spec().mu = *o.mu;
  if (o.lambda) spec().lambda = *o.lambda;
  if (o.phi) spec().phi = *o.phi;
  if (o.eta) {
    if (c.experiment == Experiment::Surface && c.grid) {
      c.grid->eta = {*o.eta};
    } else if (c.experiment == Experiment::LambdaCrit) {
      c.eta_values = std::vector<double>{*o.eta};
    } else {
      spec().eta = *o.eta;
    }
  }
  if (o.n) {
    c.n = *o.n;
    if (c.experiment == Experiment::CrbAttainment || c.experiment == Experiment::Fig5) {
      c.n_values = std::vector<std::size_t>{*o.n};
    }
  }
  if (o.trials) c.trials = *o.trials;
  if (o.seed) c.seed = SeedSpec{*o.seed, 0};
  if (o.out) c.output_path = *o.out;
  if (o.format) {
    if (*o.format == "csv") {
      c.format = OutputFormat::Csv;
    } else if (*o.format == "json") {
      c.format = OutputFormat::Json;
    } else {
      throw ConfigError("format must be csv or json");
    }
  }
  if (o.scheme) c.scheme = *o.scheme;
  if (o.input) c.input = *o.input;
  if (o.angle_policy) c.angle_policy = *o.angle_policy;
  if (o.threads) c.threads = *o.threads;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-state tomography experiments"};
  app.set_version_flag("--version", toolkit_version());

  std::string experiment;
  std::string config_path;
  Overrides o;
  app.add_option("experiment", experiment,
                 "surface | regions | lambda-crit | simulate | estimate | crb-attainment | fig5")
      ->required();
  app.add_option("--config", config_path, "JSON config, or a previous output to re-run");
  app.add_option("--mu", o.mu, "purity parameter (>= 1)");
  app.add_option("--lambda", o.lambda, "squeezing parameter (> 0)");
  app.add_option("--phi", o.phi, "squeezing angle");
  app.add_option("--eta", o.eta, "detector efficiency in (0, 1]");
  app.add_option("--n", o.n, "samples per data set");
  app.add_option("--trials", o.trials, "Monte Carlo trials");
  app.add_option("--seed", o.seed, "master seed");
  app.add_option("--scheme", o.scheme, "homodyne | heterodyne | both");
  app.add_option("--angle-policy", o.angle_policy, "continuous | grid:<d>");
  app.add_option("--input", o.input, "sample CSV for estimate");
  app.add_option("--out", o.out, "output file (stdout when omitted)");
  app.add_option("--format", o.format, "csv | json");
  app.add_option("--threads", o.threads, "worker threads, 0 = all cores");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("config", e.what(), 2);
  }

  try {
    ExperimentConfig config;
    if (!config_path.empty()) config = load_config_file(config_path);
    const Experiment chosen = experiment_from_string(experiment);
    if (!config_path.empty() && config.experiment != chosen) {
      throw ConfigError("config is for '" + to_string(config.experiment) + "', not '" + experiment + "'");
    }
    config.experiment = chosen;
    apply(o, config);
    execute(config);
  } catch (const ConfigError& e) {
    return fail("config", e.what(), 2);
  } catch (const IoError& e) {
    return fail("io", e.what(), 2);
  } catch (const NumericalError& e) {
    return fail("numerical", e.what(), 3);
  } catch (const std::exception& e) {
    return fail("numerical", e.what(), 3);
  }
  return EXIT_SUCCESS;
}
