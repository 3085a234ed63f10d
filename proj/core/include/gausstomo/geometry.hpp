#pragma once

#include <vector>

#include "gausstomo/covariance.hpp"
#include "gausstomo/state.hpp"

namespace gausstomo {

struct DirectionVariancePair {
  double theta = 0.0;
  double sigma = 0.0;  // marginal standard deviation
  double Sigma = 0.0;  // conditional standard deviation
};

struct RegionAreas {
  double s_sigma = 0.0;
  double s_Sigma = 0.0;
};

/// sqrt(u^T G u), u = (cos theta, sin theta). Throws std::domain_error if
/// `cov` is not positive definite.
double marginal_std(const Covariance2& cov, double theta);

/// (u^T G^{-1} u)^{-1/2}: the spread of a slice through the centre.
double conditional_std(const Covariance2& cov, double theta);

/// Uniformly spaced theta_k = k pi / samples. sigma comes from G_hom and
/// Sigma from G_het, the covariances the two detectors actually see.
std::vector<DirectionVariancePair> region_boundaries(const GaussianStateSpec& spec, int samples);

/// s_sigma = (1/2) int_0^{2 pi} sigma_theta^2 d theta = (pi/2) Tr G_hom and
/// s_Sigma = pi sqrt(det G_het).
RegionAreas region_areas(const GaussianStateSpec& spec);

struct CriticalLambda {
  double below_one = 0.0;
  double above_one = 0.0;  // solved separately; equals 1 / below_one
};

/// Squeezing at which the two region areas coincide for a minimum
/// uncertainty state (mu = 1). Bisection on [1e-6, 1] to 1e-12 for the
/// lambda < 1 branch, and on [1, 1e6] for the lambda > 1 branch. Throws
/// std::runtime_error if a bracket does not change sign.
CriticalLambda critical_lambda_equal_areas(double eta);

struct RegionScanRow {
  double lambda = 0.0;
  double eta = 0.0;
  RegionAreas areas;
};

std::vector<RegionScanRow> region_area_scan(const std::vector<double>& lambdas,
                                            const std::vector<double>& etas, double mu = 1.0);

}  // namespace gausstomo
