#include "harness/experiments.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "gausstomo/estimation.hpp"
#include "gausstomo/fisher.hpp"
#include "gausstomo/geometry.hpp"
#include "gausstomo/records.hpp"
#include "gausstomo/sampling.hpp"
#include "harness/parallel.hpp"

namespace gausstomo::harness {

namespace {

constexpr std::size_t kSampleBlock = 1 << 16;

std::uint64_t scheme_tag(SchemeKind scheme) { return scheme == SchemeKind::Homodyne ? 1 : 2; }

std::vector<SchemeKind> schemes_for(const std::string& name) {
  if (name == "homodyne") return {SchemeKind::Homodyne};
  if (name == "heterodyne") return {SchemeKind::Heterodyne};
  return {SchemeKind::Homodyne, SchemeKind::Heterodyne};
}

std::vector<Cell> ellipse_cells(const Covariance2& g) {
  if (!g.is_positive_definite()) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    return {nan, nan, nan};
  }
  const UncertaintyEllipse e = to_ellipse(g);
  return {e.semi_axis_major, e.semi_axis_minor, e.orientation};
}

std::string cell_to_csv(const Cell& cell) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, double>) {
          return format_double(v);
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "1" : "0";
        } else {
          return v;
        }
      },
      cell);
}

nlohmann::json cell_to_json(const Cell& cell) {
  return std::visit([](const auto& v) { return nlohmann::json(v); }, cell);
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

std::string read_header(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sample file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    return line;
  }
  throw IoError("sample file '" + path + "' has no header");
}

}  // namespace

std::string toolkit_version() { return std::string("gausstomo ") + GAUSSTOMO_VERSION; }

std::vector<TrialRecord> run_trials(const GaussianStateSpec& spec, SchemeKind scheme, std::size_t n,
                                    std::size_t trials, const SeedSpec& seed, const std::string& angle_policy,
                                    int threads) {
  const AnglePolicy policy = AnglePolicy::parse(angle_policy);
  const Covariance2 truth = wigner_covariance(spec);
  std::vector<TrialRecord> records(trials);
  parallel_for(trials, threads, [&](std::size_t t) {
    const SeedSpec stream = derive_stream(seed, {scheme_tag(scheme), n, t});
    EstimationResult est;
    if (scheme == SchemeKind::Homodyne) {
      est = estimate_homodyne_ml(sample_homodyne(spec, n, policy, stream), spec.eta);
    } else {
      est = estimate_heterodyne(sample_heterodyne(spec, n, stream), spec.eta);
    }
    records[t] = {t, n, scheme, hs_distance_sq(est.g_wigner, truth), est.converged, est.g_wigner};
  });
  return records;
}

ExperimentOutput run_surface(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.table.columns = {"lambda", "mu", "eta", "h_hom", "h_het", "gamma", "mode"};
  std::vector<std::pair<GammaMode, const char*>> modes;
  if (*c.mode != "hypothetical") modes.emplace_back(GammaMode::Real, "real");
  if (*c.mode != "real") modes.emplace_back(GammaMode::Hypothetical, "hypothetical");
  for (double eta : c.grid->eta) {
    for (const auto& [mode, name] : modes) {
      for (const CrbReport& r : gamma_surface({c.grid->lambda, c.grid->mu, eta}, mode)) {
        out.table.rows.push_back(
            {r.spec.lambda, r.spec.mu, r.spec.eta, r.h_hom, r.h_het, r.gamma, std::string(name)});
      }
    }
  }
  return out;
}

ExperimentOutput run_regions(const ExperimentConfig& c) {
  ExperimentOutput out;
  if (c.grid) {
    out.table.columns = {"lambda", "eta", "s_sigma", "s_Sigma"};
    for (const RegionScanRow& r : region_area_scan(c.grid->lambda, c.grid->eta, c.spec->mu)) {
      out.table.rows.push_back({r.lambda, r.eta, r.areas.s_sigma, r.areas.s_Sigma});
    }
    return out;
  }
  out.table.columns = {"theta", "sigma", "Sigma"};
  for (const DirectionVariancePair& p : region_boundaries(*c.spec, *c.samples)) {
    out.table.rows.push_back({p.theta, p.sigma, p.Sigma});
  }
  const RegionAreas areas = region_areas(*c.spec);
  out.extra["areas"] = {{"s_sigma", areas.s_sigma}, {"s_Sigma", areas.s_Sigma}};
  return out;
}

ExperimentOutput run_lambda_crit(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.table.columns = {"eta", "lambda_crit"};
  nlohmann::json reciprocal = nlohmann::json::array();
  for (double eta : *c.eta_values) {
    const CriticalLambda crit = critical_lambda_equal_areas(eta);
    out.table.rows.push_back({eta, crit.below_one});
    reciprocal.push_back(crit.above_one);
  }
  out.extra["lambda_crit_above_one"] = reciprocal;
  return out;
}

ExperimentOutput run_simulate(const ExperimentConfig& c) {
  ExperimentOutput out;
  const std::size_t n = *c.n;
  const std::size_t blocks = (n + kSampleBlock - 1) / kSampleBlock;
  if (*c.scheme == "homodyne") {
    const AnglePolicy policy = AnglePolicy::parse(*c.angle_policy);
    std::vector<QuadratureSample> data(n);
    parallel_for(blocks, c.threads, [&](std::size_t b) {
      const std::size_t first = b * kSampleBlock;
      const std::size_t count = std::min(kSampleBlock, n - first);
      sample_homodyne_into(*c.spec, policy, *c.seed, first, std::span(data).subspan(first, count));
    });
    out.table.columns = {"theta", "x"};
    out.table.rows.reserve(n);
    for (const auto& s : data) out.table.rows.push_back({s.theta, s.x});
  } else {
    std::vector<PhaseSpaceSample> data(n);
    parallel_for(blocks, c.threads, [&](std::size_t b) {
      const std::size_t first = b * kSampleBlock;
      const std::size_t count = std::min(kSampleBlock, n - first);
      sample_heterodyne_into(*c.spec, *c.seed, first, std::span(data).subspan(first, count));
    });
    out.table.columns = {"x", "p"};
    out.table.rows.reserve(n);
    for (const auto& s : data) out.table.rows.push_back({s.x, s.p});
  }
  out.sidecar = {{"toolkit", toolkit_version()},
                 {"config", provenance_json(c)},
                 {"spec", *c.spec},
                 {"scheme", *c.scheme},
                 {"angle_policy", *c.angle_policy},
                 {"n", n},
                 {"seed", *c.seed}};
  return out;
}

ExperimentOutput run_estimate(const ExperimentConfig& c) {
  const std::string header = read_header(*c.input);
  SchemeKind scheme;
  if (header == kHomodyneHeader) {
    scheme = SchemeKind::Homodyne;
  } else if (header == kHeterodyneHeader) {
    scheme = SchemeKind::Heterodyne;
  } else {
    throw ConfigError("estimate: '" + *c.input + "' has unknown header '" + header + "'");
  }
  if (c.scheme && scheme_from_string(*c.scheme) != scheme) {
    throw ConfigError("estimate: scheme '" + *c.scheme + "' does not match the sample file");
  }

  nlohmann::json sidecar;
  {
    std::ifstream side(*c.input + ".json");
    if (side) {
      try {
        sidecar = nlohmann::json::parse(side);
      } catch (const nlohmann::json::exception& e) {
        throw ConfigError("estimate: sidecar '" + *c.input + ".json' is not valid JSON: " + e.what());
      }
    }
  }
  std::optional<GaussianStateSpec> truth;
  if (sidecar.is_object() && sidecar.contains("spec")) truth = sidecar.at("spec").get<GaussianStateSpec>();
  double eta;
  if (c.spec) {
    eta = c.spec->eta;
  } else if (truth) {
    eta = truth->eta;
  } else {
    throw ConfigError("estimate: detector efficiency unknown; pass --eta or provide a sidecar");
  }

  std::ifstream in(*c.input);
  if (!in) throw IoError("cannot open sample file '" + *c.input + "'");
  EstimationResult est;
  if (scheme == SchemeKind::Homodyne) {
    est = estimate_homodyne_ml(read_homodyne_csv(in), eta);
  } else {
    est = estimate_heterodyne(read_heterodyne_csv(in), eta);
  }

  ExperimentOutput out;
  out.table.columns = {"scheme", "n", "g1", "g2", "g3", "loglik", "iterations", "converged", "physical",
                       "semi_major", "semi_minor", "orientation"};
  std::vector<Cell> row{std::string(to_string(scheme)), as_int(est.n), est.g_wigner.g1, est.g_wigner.g2,
                        est.g_wigner.g3, est.loglik, static_cast<std::int64_t>(est.iterations), est.converged,
                        est.physical};
  for (Cell& cell : ellipse_cells(est.g_wigner)) row.push_back(std::move(cell));
  out.table.rows.push_back(std::move(row));

  out.extra["result"] = est;
  nlohmann::json fingerprint = {{"input", *c.input}, {"n", est.n}};
  if (sidecar.is_object() && sidecar.contains("seed")) fingerprint["seed"] = sidecar.at("seed");
  out.extra["fingerprint"] = fingerprint;
  if (truth) {
    out.extra["truth"] = wigner_covariance(*truth);
    out.extra["hs_distance_sq"] = hs_distance_sq(est.g_wigner, wigner_covariance(*truth));
  }
  if (!est.converged) out.warnings.push_back("estimate: optimizer did not converge");
  return out;
}

ExperimentOutput run_crb_attainment(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.table.columns = {"N", "scheme", "mean_N_times_mse", "crb", "ratio"};
  nlohmann::json records = nlohmann::json::array();
  for (std::size_t n : *c.n_values) {
    for (SchemeKind scheme : schemes_for(*c.scheme)) {
      const auto trials = run_trials(*c.spec, scheme, n, *c.trials, *c.seed, *c.angle_policy, c.threads);
      double sum = 0.0;
      std::size_t failed = 0;
      for (const TrialRecord& r : trials) {
        sum += r.hs_distance_sq;
        failed += r.converged ? 0 : 1;
        records.push_back({{"trial_index", r.trial_index},
                           {"n", r.n},
                           {"scheme", std::string(to_string(r.scheme))},
                           {"hs_distance_sq", r.hs_distance_sq},
                           {"converged", r.converged}});
      }
      const double mean_scaled = static_cast<double>(n) * sum / static_cast<double>(trials.size());
      const double crb = scheme == SchemeKind::Homodyne ? crb_hom(*c.spec) : crb_het(*c.spec);
      const double ratio = mean_scaled / crb;
      out.table.rows.push_back({as_int(n), std::string(to_string(scheme)), mean_scaled, crb, ratio});
      if (ratio < 0.9) {
        out.warnings.push_back("crb-attainment: N=" + std::to_string(n) + " " + std::string(to_string(scheme)) +
                               " ratio " + format_double(ratio) + " is below 0.9");
      }
      if (failed > 0) {
        out.warnings.push_back("crb-attainment: " + std::to_string(failed) + " trials did not converge at N=" +
                               std::to_string(n));
      }
    }
  }
  out.extra["trial_records"] = records;
  return out;
}

ExperimentOutput run_fig5(const ExperimentConfig& c) {
  ExperimentOutput out;
  out.table.columns = {"kind", "N", "scheme", "trial", "hs_distance_sq", "converged", "representative",
                       "g1", "g2", "g3", "semi_major", "semi_minor", "orientation"};
  const Covariance2 truth = wigner_covariance(*c.spec);
  auto push = [&](std::vector<Cell> head, const Covariance2& g) {
    head.insert(head.end(), {g.g1, g.g2, g.g3});
    for (Cell& cell : ellipse_cells(g)) head.push_back(std::move(cell));
    out.table.rows.push_back(std::move(head));
  };
  push({std::string("true"), std::int64_t{0}, std::string("wigner"), std::int64_t{0}, 0.0, true, false}, truth);

  nlohmann::json ordering = nlohmann::json::array();
  for (std::size_t n : *c.n_values) {
    nlohmann::json entry = {{"N", n}};
    for (SchemeKind scheme : schemes_for(*c.scheme)) {
      const auto trials = run_trials(*c.spec, scheme, n, *c.trials, *c.seed, *c.angle_policy, c.threads);
      double sum = 0.0;
      Covariance2 mean_estimate;
      bool all_converged = true;
      for (const TrialRecord& r : trials) {
        sum += r.hs_distance_sq;
        mean_estimate = mean_estimate + r.g_wigner;
        all_converged = all_converged && r.converged;
      }
      const double count = static_cast<double>(trials.size());
      const double mean_hs = sum / count;
      mean_estimate = (1.0 / count) * mean_estimate;
      std::size_t representative = 0;
      for (std::size_t t = 1; t < trials.size(); ++t) {
        if (std::abs(trials[t].hs_distance_sq - mean_hs) <
            std::abs(trials[representative].hs_distance_sq - mean_hs)) {
          representative = t;
        }
      }
      const std::string name(to_string(scheme));
      for (const TrialRecord& r : trials) {
        push({std::string("trial"), as_int(n), name, as_int(r.trial_index), r.hs_distance_sq, r.converged,
              r.trial_index == representative},
             r.g_wigner);
      }
      push({std::string("mean"), as_int(n), name, as_int(trials.size()), mean_hs, all_converged, false},
           mean_estimate);
      entry[name + "_mean_hs"] = mean_hs;
    }
    if (entry.contains("homodyne_mean_hs") && entry.contains("heterodyne_mean_hs")) {
      entry["heterodyne_below_homodyne"] =
          entry["heterodyne_mean_hs"].get<double>() < entry["homodyne_mean_hs"].get<double>();
    }
    ordering.push_back(entry);
  }
  out.extra["ordering"] = ordering;
  out.extra["gamma"] = gamma_ratio(*c.spec);
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& c) {
  try {
    switch (c.experiment) {
      case Experiment::Surface: return run_surface(c);
      case Experiment::Regions: return run_regions(c);
      case Experiment::LambdaCrit: return run_lambda_crit(c);
      case Experiment::Simulate: return run_simulate(c);
      case Experiment::Estimate: return run_estimate(c);
      case Experiment::CrbAttainment: return run_crb_attainment(c);
      case Experiment::Fig5: return run_fig5(c);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const IoError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(e.what());
  } catch (const std::domain_error& e) {
    throw NumericalError(e.what());
  } catch (const std::runtime_error& e) {
    throw NumericalError(e.what());
  }
  throw ConfigError("unhandled experiment");
}

std::string render(const ExperimentConfig& c, const ExperimentOutput& out) {
  const nlohmann::json config = provenance_json(c);
  std::ostringstream os;
  if (c.format == OutputFormat::Csv) {
    os << "# " << toolkit_version() << '\n';
    os << "# config: " << config.dump() << '\n';
    for (std::size_t i = 0; i < out.table.columns.size(); ++i) {
      os << (i ? "," : "") << out.table.columns[i];
    }
    os << '\n';
    for (const auto& row : out.table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_to_csv(row[i]);
      os << '\n';
    }
    return os.str();
  }
  nlohmann::json envelope = out.extra;
  envelope["toolkit"] = toolkit_version();
  envelope["config"] = config;
  envelope["columns"] = out.table.columns;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& row : out.table.rows) {
    nlohmann::json r = nlohmann::json::array();
    for (const Cell& cell : row) r.push_back(cell_to_json(cell));
    rows.push_back(std::move(r));
  }
  envelope["rows"] = std::move(rows);
  os << envelope.dump(2) << '\n';
  return os.str();
}

std::string execute(const ExperimentConfig& config) {
  const ExperimentConfig resolved = resolve(config);
  const ExperimentOutput output = run_experiment(resolved);
  const std::string text = render(resolved, output);
  for (const std::string& w : output.warnings) std::cerr << "warning: " << w << '\n';
  if (resolved.output_path.empty()) {
    std::cout << text;
    return text;
  }
  std::ofstream file(resolved.output_path, std::ios::binary);
  if (!file) throw IoError("cannot write '" + resolved.output_path + "'");
  file << text;
  if (!file) throw IoError("write to '" + resolved.output_path + "' failed");
  if (!output.sidecar.is_null() && resolved.format == OutputFormat::Csv) {
    std::ofstream side(resolved.output_path + ".json", std::ios::binary);
    if (!side) throw IoError("cannot write '" + resolved.output_path + ".json'");
    side << output.sidecar.dump(2) << '\n';
  }
  return text;
}

}  // namespace gausstomo::harness
