#include "harness/config.hpp"

#include <fstream>
#include <sstream>

#include "gausstomo/records.hpp"
#include "gausstomo/sampling.hpp"

namespace gausstomo::harness {

namespace {

constexpr const char* kConfigPrefix = "# config: ";

template <typename T>
T get_field(const nlohmann::json& j, const char* key) {
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

GaussianStateSpec parse_partial_spec(const nlohmann::json& j) {
  try {
    require_known_keys(j, {"mu", "lambda", "phi", "eta"}, "config spec");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  GaussianStateSpec spec;
  if (j.contains("mu")) spec.mu = get_field<double>(j, "mu");
  if (j.contains("lambda")) spec.lambda = get_field<double>(j, "lambda");
  if (j.contains("phi")) spec.phi = get_field<double>(j, "phi");
  if (j.contains("eta")) spec.eta = get_field<double>(j, "eta");
  return spec;
}

void require(bool ok, const std::string& message) {
  if (!ok) throw ConfigError(message);
}

void validate_spec(const GaussianStateSpec& spec, const std::string& context) {
  try {
    spec.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(context + ": " + e.what());
  }
}

void require_scheme(const std::string& scheme, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (scheme == a) return;
  }
  throw ConfigError("scheme '" + scheme + "' is not valid for this experiment");
}

}  // namespace

std::string to_string(Experiment e) {
  switch (e) {
    case Experiment::Surface: return "surface";
    case Experiment::Regions: return "regions";
    case Experiment::LambdaCrit: return "lambda-crit";
    case Experiment::Simulate: return "simulate";
    case Experiment::Estimate: return "estimate";
    case Experiment::CrbAttainment: return "crb-attainment";
    case Experiment::Fig5: return "fig5";
  }
  return "unknown";
}

Experiment experiment_from_string(const std::string& name) {
  for (Experiment e : {Experiment::Surface, Experiment::Regions, Experiment::LambdaCrit, Experiment::Simulate,
                       Experiment::Estimate, Experiment::CrbAttainment, Experiment::Fig5}) {
    if (to_string(e) == name) return e;
  }
  throw ConfigError("unknown experiment '" + name + "'");
}

ExperimentConfig parse_config(const nlohmann::json& raw) {
  if (raw.is_object() && raw.contains("toolkit") && raw.contains("config")) {
    return parse_config(raw.at("config"));
  }
  try {
    require_known_keys(raw,
                       {"experiment", "spec", "grid", "mode", "n", "n_values", "trials", "seed", "scheme",
                        "angle_policy", "samples", "eta_values", "input", "format", "output_path", "threads"},
                       "config");
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  ExperimentConfig c;
  require(raw.contains("experiment"), "config: missing 'experiment'");
  c.experiment = experiment_from_string(get_field<std::string>(raw, "experiment"));
  if (raw.contains("spec")) c.spec = parse_partial_spec(raw.at("spec"));
  if (raw.contains("grid")) {
    const auto& g = raw.at("grid");
    try {
      require_known_keys(g, {"lambda", "mu", "eta"}, "config grid");
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    GridConfig grid;
    if (g.contains("lambda")) grid.lambda = get_field<std::vector<double>>(g, "lambda");
    if (g.contains("mu")) grid.mu = get_field<std::vector<double>>(g, "mu");
    if (g.contains("eta")) {
      grid.eta = g.at("eta").is_number() ? std::vector<double>{get_field<double>(g, "eta")}
                                         : get_field<std::vector<double>>(g, "eta");
    }
    c.grid = grid;
  }
  if (raw.contains("mode")) c.mode = get_field<std::string>(raw, "mode");
  if (raw.contains("n")) c.n = get_field<std::size_t>(raw, "n");
  if (raw.contains("n_values")) c.n_values = get_field<std::vector<std::size_t>>(raw, "n_values");
  if (raw.contains("trials")) c.trials = get_field<std::size_t>(raw, "trials");
  if (raw.contains("seed")) {
    try {
      c.seed = raw.at("seed").get<SeedSpec>();
    } catch (const std::exception& e) {
      throw ConfigError(std::string("config key 'seed': ") + e.what());
    }
  }
  if (raw.contains("scheme")) c.scheme = get_field<std::string>(raw, "scheme");
  if (raw.contains("angle_policy")) c.angle_policy = get_field<std::string>(raw, "angle_policy");
  if (raw.contains("samples")) c.samples = get_field<int>(raw, "samples");
  if (raw.contains("eta_values")) c.eta_values = get_field<std::vector<double>>(raw, "eta_values");
  if (raw.contains("input")) c.input = get_field<std::string>(raw, "input");
  if (raw.contains("format")) {
    const auto f = get_field<std::string>(raw, "format");
    require(f == "csv" || f == "json", "config: format must be 'csv' or 'json'");
    c.format = f == "csv" ? OutputFormat::Csv : OutputFormat::Json;
  }
  if (raw.contains("output_path")) c.output_path = get_field<std::string>(raw, "output_path");
  if (raw.contains("threads")) c.threads = get_field<int>(raw, "threads");
  return c;
}

ExperimentConfig resolve(ExperimentConfig c) {
  require(c.threads >= 0, "threads must be >= 0");
  if (!c.seed) c.seed = kDefaultSeed;

  switch (c.experiment) {
    case Experiment::Surface: {
      require(c.grid.has_value(), "surface: 'grid' with lambda, mu and eta lists is required");
      require(!c.grid->lambda.empty() && !c.grid->mu.empty() && !c.grid->eta.empty(),
              "surface: grid needs non-empty lambda, mu and eta lists");
      for (double lambda : c.grid->lambda)
        for (double mu : c.grid->mu)
          for (double eta : c.grid->eta) validate_spec({mu, lambda, 0.0, eta}, "surface grid");
      if (!c.mode) c.mode = "both";
      require(*c.mode == "real" || *c.mode == "hypothetical" || *c.mode == "both",
              "surface: mode must be real, hypothetical or both");
      break;
    }
    case Experiment::Regions: {
      if (!c.spec) c.spec = GaussianStateSpec{};
      validate_spec(*c.spec, "regions");
      if (!c.samples) c.samples = 256;
      require(*c.samples >= 4, "regions: samples must be >= 4");
      if (c.grid) {
        require(!c.grid->lambda.empty() && !c.grid->eta.empty(),
                "regions: an area scan needs non-empty grid.lambda and grid.eta");
        for (double lambda : c.grid->lambda)
          for (double eta : c.grid->eta) validate_spec({c.spec->mu, lambda, 0.0, eta}, "regions grid");
      }
      break;
    }
    case Experiment::LambdaCrit: {
      if (!c.eta_values && c.grid && !c.grid->eta.empty()) c.eta_values = c.grid->eta;
      require(c.eta_values && !c.eta_values->empty(), "lambda-crit: 'eta_values' is required");
      for (double eta : *c.eta_values) require(eta > 0.0 && eta <= 1.0, "lambda-crit: eta must lie in (0, 1]");
      break;
    }
    case Experiment::Simulate: {
      require(c.spec.has_value(), "simulate: 'spec' is required");
      validate_spec(*c.spec, "simulate");
      require(c.n.has_value() && *c.n >= 1, "simulate: 'n' >= 1 is required");
      require(c.scheme.has_value(), "simulate: 'scheme' (homodyne | heterodyne) is required");
      require_scheme(*c.scheme, {"homodyne", "heterodyne"});
      if (!c.angle_policy) c.angle_policy = "continuous";
      try {
        (void)AnglePolicy::parse(*c.angle_policy);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      break;
    }
    case Experiment::Estimate: {
      require(c.input.has_value() && !c.input->empty(), "estimate: 'input' sample file is required");
      if (c.scheme) require_scheme(*c.scheme, {"homodyne", "heterodyne"});
      if (c.spec) validate_spec(*c.spec, "estimate");
      break;
    }
    case Experiment::CrbAttainment:
    case Experiment::Fig5: {
      const bool fig5 = c.experiment == Experiment::Fig5;
      if (!c.spec) {
        require(fig5, "crb-attainment: 'spec' is required");
        c.spec = GaussianStateSpec{2.0, 10.0, 0.0, 0.5};
      }
      validate_spec(*c.spec, to_string(c.experiment));
      if (!c.n_values) {
        if (c.n) {
          c.n_values = std::vector<std::size_t>{*c.n};
        } else {
          require(fig5, "crb-attainment: 'n_values' is required");
          c.n_values = std::vector<std::size_t>{50, 100, 150};
        }
      }
      c.n.reset();
      require(!c.n_values->empty(), "n_values must not be empty");
      for (std::size_t n : *c.n_values) require(n >= 3, "every N in n_values must be >= 3");
      if (!c.trials) c.trials = fig5 ? 1000 : 500;
      require(*c.trials >= 1, "trials must be >= 1");
      if (!c.scheme) c.scheme = "both";
      require_scheme(*c.scheme, {"homodyne", "heterodyne", "both"});
      if (!c.angle_policy) c.angle_policy = "continuous";
      try {
        (void)AnglePolicy::parse(*c.angle_policy);
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      }
      break;
    }
  }
  return c;
}

nlohmann::json provenance_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["experiment"] = to_string(c.experiment);
  if (c.spec) j["spec"] = *c.spec;
  if (c.grid) {
    nlohmann::json g = nlohmann::json::object();
    if (!c.grid->lambda.empty()) g["lambda"] = c.grid->lambda;
    if (!c.grid->mu.empty()) g["mu"] = c.grid->mu;
    if (!c.grid->eta.empty()) g["eta"] = c.grid->eta;
    j["grid"] = g;
  }
  if (c.mode) j["mode"] = *c.mode;
  if (c.n) j["n"] = *c.n;
  if (c.n_values) j["n_values"] = *c.n_values;
  if (c.trials) j["trials"] = *c.trials;
  if (c.seed) j["seed"] = *c.seed;
  if (c.scheme) j["scheme"] = *c.scheme;
  if (c.angle_policy) j["angle_policy"] = *c.angle_policy;
  if (c.samples) j["samples"] = *c.samples;
  if (c.eta_values) j["eta_values"] = *c.eta_values;
  if (c.input) j["input"] = *c.input;
  j["format"] = c.format == OutputFormat::Csv ? "csv" : "json";
  return j;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();

  if (!text.empty() && text.front() == '#') {
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line) && !line.empty() && line.front() == '#') {
      if (line.rfind(kConfigPrefix, 0) == 0) {
        try {
          return parse_config(nlohmann::json::parse(line.substr(std::string(kConfigPrefix).size())));
        } catch (const nlohmann::json::exception& e) {
          throw ConfigError("embedded config in '" + path + "' is not valid JSON: " + e.what());
        }
      }
    }
    throw ConfigError("'" + path + "' has no embedded '# config:' line");
  }
  try {
    return parse_config(nlohmann::json::parse(text));
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

}  // namespace gausstomo::harness
