#include "gausstomo/records.hpp"

#include <array>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace gausstomo {

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void require_known_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                        const std::string& context) {
  if (!j.is_object()) throw std::invalid_argument(context + ": expected a JSON object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) known = known || item.key() == key;
    if (!known) throw std::invalid_argument(context + ": unknown key '" + item.key() + "'");
  }
}

void to_json(nlohmann::json& j, const GaussianStateSpec& spec) {
  j = {{"mu", spec.mu}, {"lambda", spec.lambda}, {"phi", spec.phi}, {"eta", spec.eta}};
}

void from_json(const nlohmann::json& j, GaussianStateSpec& spec) {
  require_known_keys(j, {"mu", "lambda", "phi", "eta"}, "state spec");
  spec = GaussianStateSpec{};
  spec.mu = j.at("mu").get<double>();
  spec.lambda = j.at("lambda").get<double>();
  if (j.contains("phi")) spec.phi = j.at("phi").get<double>();
  if (j.contains("eta")) spec.eta = j.at("eta").get<double>();
}

void to_json(nlohmann::json& j, const Covariance2& cov) { j = {{"g1", cov.g1}, {"g2", cov.g2}, {"g3", cov.g3}}; }

void from_json(const nlohmann::json& j, Covariance2& cov) {
  require_known_keys(j, {"g1", "g2", "g3"}, "covariance");
  cov = {j.at("g1").get<double>(), j.at("g2").get<double>(), j.at("g3").get<double>()};
}

void to_json(nlohmann::json& j, const SeedSpec& seed) {
  j = {{"master_seed", seed.master_seed}, {"stream_id", seed.stream_id}};
}

void from_json(const nlohmann::json& j, SeedSpec& seed) {
  if (j.is_number_integer()) {
    if (j.get<std::int64_t>() < 0 && !j.is_number_unsigned()) {
      throw std::invalid_argument("seed: must be non-negative");
    }
    seed = {j.get<std::uint64_t>(), 0};
    return;
  }
  require_known_keys(j, {"master_seed", "stream_id"}, "seed");
  seed.master_seed = j.at("master_seed").get<std::uint64_t>();
  seed.stream_id = j.contains("stream_id") ? j.at("stream_id").get<std::uint64_t>() : 0;
}

void to_json(nlohmann::json& j, const UncertaintyEllipse& e) {
  j = {{"semi_axis_major", e.semi_axis_major},
       {"semi_axis_minor", e.semi_axis_minor},
       {"orientation", e.orientation}};
}

void to_json(nlohmann::json& j, const EstimationResult& r) {
  j = {{"scheme", std::string(to_string(r.scheme))},
       {"n", r.n},
       {"g_wigner", r.g_wigner},
       {"g_effective", r.g_effective},
       {"loglik", r.loglik},
       {"iterations", r.iterations},
       {"converged", r.converged},
       {"physical", r.physical},
       {"gradient_norm", r.gradient_norm}};
  if (r.g_wigner.is_positive_definite()) {
    j["ellipse"] = to_ellipse(r.g_wigner);
  } else {
    j["ellipse"] = nullptr;
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

template <typename Row, typename Emit>
void write_table(std::ostream& os, const char* header, std::span<const Row> rows, Emit emit) {
  os << header << '\n';
  for (const Row& r : rows) emit(r);
}

std::vector<std::array<double, 2>> read_pairs(std::istream& is, const char* header) {
  std::string line;
  bool seen_header = false;
  std::vector<std::array<double, 2>> out;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!seen_header) {
      if (line != header) {
        throw std::invalid_argument("CSV: expected header '" + std::string(header) + "', got '" + line + "'");
      }
      seen_header = true;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 2) {
      throw std::invalid_argument("CSV: line " + std::to_string(line_no) + " does not have two fields");
    }
    std::array<double, 2> row{};
    for (int k = 0; k < 2; ++k) {
      std::size_t pos = 0;
      row[k] = std::stod(fields[k], &pos);
      if (pos != fields[k].size()) {
        throw std::invalid_argument("CSV: bad number '" + fields[k] + "' on line " + std::to_string(line_no));
      }
    }
    out.push_back(row);
  }
  if (!seen_header) throw std::invalid_argument("CSV: missing header '" + std::string(header) + "'");
  return out;
}

}  // namespace

void write_homodyne_csv(std::ostream& os, std::span<const QuadratureSample> data) {
  write_table(os, kHomodyneHeader, data, [&](const QuadratureSample& s) {
    os << format_double(s.theta) << ',' << format_double(s.x) << '\n';
  });
}

void write_heterodyne_csv(std::ostream& os, std::span<const PhaseSpaceSample> data) {
  write_table(os, kHeterodyneHeader, data, [&](const PhaseSpaceSample& s) {
    os << format_double(s.x) << ',' << format_double(s.p) << '\n';
  });
}

std::vector<QuadratureSample> read_homodyne_csv(std::istream& is) {
  std::vector<QuadratureSample> out;
  for (const auto& r : read_pairs(is, kHomodyneHeader)) out.push_back({r[0], r[1]});
  return out;
}

std::vector<PhaseSpaceSample> read_heterodyne_csv(std::istream& is) {
  std::vector<PhaseSpaceSample> out;
  for (const auto& r : read_pairs(is, kHeterodyneHeader)) out.push_back({r[0], r[1]});
  return out;
}

void write_gamma_csv(std::ostream& os, std::span<const CrbReport> rows) {
  write_table(os, kGammaHeader, rows, [&](const CrbReport& r) {
    os << format_double(r.spec.lambda) << ',' << format_double(r.spec.mu) << ',' << format_double(r.spec.eta)
       << ',' << format_double(r.h_hom) << ',' << format_double(r.h_het) << ',' << format_double(r.gamma)
       << '\n';
  });
}

void write_boundaries_csv(std::ostream& os, std::span<const DirectionVariancePair> rows) {
  write_table(os, kBoundaryHeader, rows, [&](const DirectionVariancePair& r) {
    os << format_double(r.theta) << ',' << format_double(r.sigma) << ',' << format_double(r.Sigma) << '\n';
  });
}

void write_region_scan_csv(std::ostream& os, std::span<const RegionScanRow> rows) {
  write_table(os, kRegionScanHeader, rows, [&](const RegionScanRow& r) {
    os << format_double(r.lambda) << ',' << format_double(r.eta) << ',' << format_double(r.areas.s_sigma)
       << ',' << format_double(r.areas.s_Sigma) << '\n';
  });
}

}  // namespace gausstomo
