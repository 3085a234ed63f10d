#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gausstomo/covariance.hpp"
#include "gausstomo/estimation.hpp"
#include "gausstomo/fisher.hpp"
#include "gausstomo/geometry.hpp"
#include "gausstomo/random.hpp"
#include "gausstomo/sampling.hpp"
#include "gausstomo/state.hpp"

namespace gausstomo {

/// printf("%.17g"): round-trips every double.
std::string format_double(double value);

// JSON records. Readers reject unknown keys.
void to_json(nlohmann::json& j, const GaussianStateSpec& spec);
void from_json(const nlohmann::json& j, GaussianStateSpec& spec);
void to_json(nlohmann::json& j, const Covariance2& cov);
void from_json(const nlohmann::json& j, Covariance2& cov);
void to_json(nlohmann::json& j, const SeedSpec& seed);
void from_json(const nlohmann::json& j, SeedSpec& seed);
void to_json(nlohmann::json& j, const UncertaintyEllipse& e);
void to_json(nlohmann::json& j, const EstimationResult& r);

/// Throws std::invalid_argument naming the first key of `j` not listed.
void require_known_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                        const std::string& context);

// CSV tables. Readers skip blank lines and lines starting with '#', then
// expect the exact header.
inline constexpr const char* kHomodyneHeader = "theta,x";
inline constexpr const char* kHeterodyneHeader = "x,p";
inline constexpr const char* kGammaHeader = "lambda,mu,eta,h_hom,h_het,gamma";
inline constexpr const char* kBoundaryHeader = "theta,sigma,Sigma";
inline constexpr const char* kRegionScanHeader = "lambda,eta,s_sigma,s_Sigma";

void write_homodyne_csv(std::ostream& os, std::span<const QuadratureSample> data);
void write_heterodyne_csv(std::ostream& os, std::span<const PhaseSpaceSample> data);
std::vector<QuadratureSample> read_homodyne_csv(std::istream& is);
std::vector<PhaseSpaceSample> read_heterodyne_csv(std::istream& is);

void write_gamma_csv(std::ostream& os, std::span<const CrbReport> rows);
void write_boundaries_csv(std::ostream& os, std::span<const DirectionVariancePair> rows);
void write_region_scan_csv(std::ostream& os, std::span<const RegionScanRow> rows);

/// Splits one CSV line on commas (no quoting; all tables are numeric).
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace gausstomo
