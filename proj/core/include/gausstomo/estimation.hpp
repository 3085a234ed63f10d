#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>

#include <Eigen/Core>

#include "gausstomo/covariance.hpp"
#include "gausstomo/sampling.hpp"
#include "gausstomo/state.hpp"

namespace gausstomo {

struct EstimationResult {
  Covariance2 g_wigner;     // estimate of G_W after the offset is removed
  Covariance2 g_effective;  // fitted covariance of the raw data (always PD)
  double loglik = 0.0;
  int iterations = 0;
  bool converged = false;
  SchemeKind scheme = SchemeKind::Homodyne;
  /// g_wigner is positive definite with det >= 1/4. Small samples may give
  /// unphysical estimates; they are reported, never clipped.
  bool physical = false;
  double gradient_norm = 0.0;  // scaled, see HomodyneMlOptions
  std::size_t n = 0;
};

struct UncertaintyEllipse {
  double semi_axis_major = 0.0;
  double semi_axis_minor = 0.0;
  double orientation = 0.0;  // major-axis direction in [0, pi)
};

struct HomodyneMlOptions {
  int max_iterations = 200;
  /// Stop when ||grad_g l|| Tr(G) / N falls below this.
  double gradient_tolerance = 1e-8;
};

class NotPositiveDefinite : public std::domain_error {
 public:
  NotPositiveDefinite(const std::string& what, double eigenvalue)
      : std::domain_error(what), eigenvalue_(eigenvalue) {}
  double eigenvalue() const { return eigenvalue_; }

 private:
  double eigenvalue_;
};

/// Gaussian log-likelihood of homodyne data as a function of the effective
/// covariance, l(g) = -1/2 sum_j [x_j^2 / C_j + ln C_j] with C_j = v_j . g.
class HomodyneLikelihood {
 public:
  explicit HomodyneLikelihood(std::span<const QuadratureSample> data);

  struct Derivatives {
    double value = 0.0;
    Eigen::Vector3d gradient = Eigen::Vector3d::Zero();
    Eigen::Matrix3d hessian = Eigen::Matrix3d::Zero();
  };

  /// -infinity when some C_j <= 0.
  double value(const Covariance2& g) const;
  Derivatives derivatives(const Covariance2& g) const;

  /// Least-squares fit of x^2 against v . g (the linear-inversion estimate).
  /// On exactly three distinct angles this is the moment match.
  Covariance2 linear_inversion() const;

  /// Number of distinct directions theta mod pi (separation > 1e-12).
  std::size_t distinct_angles() const;

  std::size_t size() const { return x2_.size(); }

 private:
  std::vector<Eigen::Vector3d> v_;
  std::vector<double> x2_;
  std::vector<double> theta_;
};

/// Maximum-likelihood G_W from homodyne data, optimized by Newton steps over
/// a Cholesky parametrization of G_hom (exponentiated diagonal), then
/// G_W = G_hom - delta_hom(eta) I. Throws std::invalid_argument for empty
/// data or fewer than three distinct angles.
EstimationResult estimate_homodyne_ml(std::span<const QuadratureSample> data, double eta,
                                      const HomodyneMlOptions& options = {});

/// Zero-mean sample second-moment matrix (divided by N) minus
/// delta_het(eta) I. This is the ML estimate and unbiased for every N.
EstimationResult estimate_heterodyne(std::span<const PhaseSpaceSample> data, double eta);

/// Sum_k (a_k - b_k)^2 = Tr[(A - B)^2].
double hs_distance_sq(const Covariance2& a, const Covariance2& b);

/// Semi-axes are square roots of the eigenvalues. Throws NotPositiveDefinite.
UncertaintyEllipse to_ellipse(const Covariance2& cov);

/// Clips eigenvalues to at least `floor`. For display only.
Covariance2 project_eigenvalues(const Covariance2& cov, double floor = 1e-12);

bool is_physical(const Covariance2& g_wigner);

}  // namespace gausstomo
