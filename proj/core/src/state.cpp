#include "gausstomo/state.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gausstomo {

void GaussianStateSpec::validate() const {
  if (!(mu >= 1.0 - kPhysicalityTolerance) || !std::isfinite(mu)) {
    throw std::domain_error("GaussianStateSpec: mu must be >= 1, got " + std::to_string(mu));
  }
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw std::domain_error("GaussianStateSpec: lambda must be > 0, got " + std::to_string(lambda));
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("GaussianStateSpec: eta must lie in (0, 1], got " + std::to_string(eta));
  }
  if (!std::isfinite(phi)) {
    throw std::domain_error("GaussianStateSpec: phi must be finite");
  }
}

GaussianStateSpec GaussianStateSpec::canonical() const {
  validate();
  GaussianStateSpec out = *this;
  if (out.lambda < 1.0) {
    out.lambda = 1.0 / out.lambda;
    out.phi += 0.5 * std::numbers::pi;
  }
  out.phi = reduce_mod_pi(out.phi);
  return out;
}

std::string_view to_string(SchemeKind scheme) {
  switch (scheme) {
    case SchemeKind::Homodyne: return "homodyne";
    case SchemeKind::Heterodyne: return "heterodyne";
    case SchemeKind::HypotheticalNoAK: return "hypothetical";
  }
  return "unknown";
}

SchemeKind scheme_from_string(std::string_view name) {
  if (name == "homodyne") return SchemeKind::Homodyne;
  if (name == "heterodyne") return SchemeKind::Heterodyne;
  if (name == "hypothetical") return SchemeKind::HypotheticalNoAK;
  throw std::invalid_argument("unknown scheme '" + std::string(name) + "'");
}

double homodyne_offset(double eta) { return (1.0 - eta) / (2.0 * eta); }

double heterodyne_offset(double eta) { return (2.0 - eta) / (2.0 * eta); }

double scheme_offset(SchemeKind scheme, double eta) {
  switch (scheme) {
    case SchemeKind::Homodyne: return homodyne_offset(eta);
    case SchemeKind::Heterodyne: return heterodyne_offset(eta);
    case SchemeKind::HypotheticalNoAK: return 0.0;
  }
  return 0.0;
}

Covariance2 wigner_covariance(const GaussianStateSpec& spec) {
  spec.validate();
  const double half_mu = 0.5 * spec.mu;
  const Covariance2 diagonal{half_mu / spec.lambda, half_mu * spec.lambda, 0.0};
  return spec.phi == 0.0 ? diagonal : diagonal.rotated(spec.phi);
}

Covariance2 effective_covariance(const GaussianStateSpec& spec, SchemeKind scheme) {
  return wigner_covariance(spec).shifted(scheme_offset(scheme, spec.eta));
}

Covariance2 q_covariance(const GaussianStateSpec& spec) {
  return wigner_covariance(spec).shifted(1.0 / (2.0 * spec.eta));
}

SqueezingDb squeezing_db(const GaussianStateSpec& spec) {
  spec.validate();
  return {10.0 * std::log10(spec.mu / spec.lambda), 10.0 * std::log10(spec.mu * spec.lambda)};
}

}  // namespace gausstomo
