#include "gausstomo/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gausstomo {

namespace {

void require_pd(const Covariance2& cov, const char* where) {
  if (!cov.is_positive_definite()) {
    throw std::domain_error(std::string(where) + ": covariance is not positive definite");
  }
}

}  // namespace

double marginal_std(const Covariance2& cov, double theta) {
  require_pd(cov, "marginal_std");
  return std::sqrt(cov.quadratic_form(theta));
}

double conditional_std(const Covariance2& cov, double theta) {
  require_pd(cov, "conditional_std");
  return 1.0 / std::sqrt(cov.inverse().quadratic_form(theta));
}

std::vector<DirectionVariancePair> region_boundaries(const GaussianStateSpec& spec, int samples) {
  if (samples < 4) {
    throw std::invalid_argument("region_boundaries: samples must be >= 4");
  }
  const Covariance2 g_hom = effective_covariance(spec, SchemeKind::Homodyne);
  const Covariance2 g_het = effective_covariance(spec, SchemeKind::Heterodyne);
  std::vector<DirectionVariancePair> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    const double theta = k * std::numbers::pi / samples;
    out.push_back({theta, marginal_std(g_hom, theta), conditional_std(g_het, theta)});
  }
  return out;
}

RegionAreas region_areas(const GaussianStateSpec& spec) {
  const Covariance2 g_hom = effective_covariance(spec, SchemeKind::Homodyne);
  const Covariance2 g_het = effective_covariance(spec, SchemeKind::Heterodyne);
  return {0.5 * std::numbers::pi * g_hom.trace(), std::numbers::pi * std::sqrt(g_het.det())};
}

CriticalLambda critical_lambda_equal_areas(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("critical_lambda_equal_areas: eta must lie in (0, 1]");
  }
  auto gap = [eta](double lambda) {
    const RegionAreas a = region_areas({1.0, lambda, 0.0, eta});
    return a.s_sigma - a.s_Sigma;
  };
  double lo = 1e-6;
  double hi = 1.0;
  const double f_lo = gap(lo);
  const double f_hi = gap(hi);
  if (!(f_lo > 0.0 && f_hi < 0.0)) {
    throw std::runtime_error("critical_lambda_equal_areas: bracket [1e-6, 1] does not change sign");
  }
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double lower = 0.5 * (lo + hi);

  // The lambda > 1 branch is solved on its own so the reciprocal relation
  // stays a check rather than a definition.
  lo = 1.0;
  hi = 1e6;
  if (!(gap(hi) > 0.0)) {
    throw std::runtime_error("critical_lambda_equal_areas: bracket [1, 1e6] does not change sign");
  }
  while (hi - lo > 1e-11 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (gap(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return {lower, 0.5 * (lo + hi)};
}

std::vector<RegionScanRow> region_area_scan(const std::vector<double>& lambdas,
                                            const std::vector<double>& etas, double mu) {
  std::vector<RegionScanRow> out;
  out.reserve(lambdas.size() * etas.size());
  for (double lambda : lambdas) {
    for (double eta : etas) {
      out.push_back({lambda, eta, region_areas({mu, lambda, 0.0, eta})});
    }
  }
  return out;
}

}  // namespace gausstomo
