#include "gausstomo/sampling.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gausstomo {

namespace {

void validate_policy(const AnglePolicy& policy) {
  if (policy.kind == AnglePolicy::Kind::UniformGrid && policy.d == 0) {
    throw std::invalid_argument("AnglePolicy: uniform grid needs d >= 1");
  }
}

}  // namespace

std::string AnglePolicy::to_string() const {
  return kind == Kind::ContinuousSweep ? "continuous" : "grid:" + std::to_string(d);
}

AnglePolicy AnglePolicy::parse(const std::string& text) {
  if (text == "continuous") return continuous_sweep();
  if (text.rfind("grid:", 0) == 0) {
    std::size_t pos = 0;
    const std::string digits = text.substr(5);
    const unsigned long long d = digits.empty() ? 0 : std::stoull(digits, &pos);
    if (pos != digits.size() || d == 0) {
      throw std::invalid_argument("AnglePolicy: bad grid size in '" + text + "'");
    }
    return uniform_grid(static_cast<std::size_t>(d));
  }
  throw std::invalid_argument("AnglePolicy: expected 'continuous' or 'grid:<d>', got '" + text + "'");
}

void sample_homodyne_into(const GaussianStateSpec& spec, const AnglePolicy& policy, const SeedSpec& seed,
                          std::uint64_t first_index, std::span<QuadratureSample> out) {
  validate_policy(policy);
  const Covariance2 g_hom = effective_covariance(spec, SchemeKind::Homodyne);
  const CounterRng rng(seed);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const std::uint64_t index = first_index + k;
    const auto bits = rng.block(index);
    double theta;
    if (policy.kind == AnglePolicy::Kind::ContinuousSweep) {
      theta = std::numbers::pi * to_unit_closed_open(bits[0]);
    } else {
      theta = static_cast<double>(index % policy.d) * std::numbers::pi / static_cast<double>(policy.d);
    }
    const double sd = std::sqrt(g_hom.quadratic_form(theta));
    out[k] = {theta, sd * normal_quantile(to_unit_open(bits[1]))};
  }
}

std::vector<QuadratureSample> sample_homodyne(const GaussianStateSpec& spec, std::size_t n,
                                              const AnglePolicy& policy, const SeedSpec& seed) {
  if (n == 0) throw std::invalid_argument("sample_homodyne: n must be >= 1");
  std::vector<QuadratureSample> out(n);
  sample_homodyne_into(spec, policy, seed, 0, out);
  return out;
}

void sample_heterodyne_into(const GaussianStateSpec& spec, const SeedSpec& seed, std::uint64_t first_index,
                            std::span<PhaseSpaceSample> out) {
  const Covariance2 g = effective_covariance(spec, SchemeKind::Heterodyne);
  const double l11 = std::sqrt(g.xx());
  const double l21 = g.xp() / l11;
  const double l22 = std::sqrt(g.pp() - l21 * l21);
  const CounterRng rng(seed);
  for (std::size_t k = 0; k < out.size(); ++k) {
    const auto bits = rng.block(first_index + k);
    const double z1 = normal_quantile(to_unit_open(bits[0]));
    const double z2 = normal_quantile(to_unit_open(bits[1]));
    out[k] = {l11 * z1, l21 * z1 + l22 * z2};
  }
}

std::vector<PhaseSpaceSample> sample_heterodyne(const GaussianStateSpec& spec, std::size_t n,
                                                const SeedSpec& seed) {
  if (n == 0) throw std::invalid_argument("sample_heterodyne: n must be >= 1");
  std::vector<PhaseSpaceSample> out(n);
  sample_heterodyne_into(spec, seed, 0, out);
  return out;
}

}  // namespace gausstomo
