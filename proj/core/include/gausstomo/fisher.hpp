#pragma once

#include <functional>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "gausstomo/covariance.hpp"
#include "gausstomo/state.hpp"

namespace gausstomo {

/// Scaled (per-copy) Fisher information over the parameters (g1, g2, g3).
class Fisher3 {
 public:
  Fisher3() : m_(Eigen::Matrix3d::Zero()) {}
  explicit Fisher3(const Eigen::Matrix3d& m) : m_(0.5 * (m + m.transpose())) {}

  const Eigen::Matrix3d& matrix() const { return m_; }
  double operator()(int row, int col) const { return m_(row, col); }

  /// Tr F^{-1}: the Cramer-Rao bound on the scaled Hilbert-Schmidt MSE.
  /// Throws std::domain_error when F is numerically singular. For a matrix
  /// built by an orthogonal congruence the trace is taken in the original
  /// frame, where it is unchanged and better conditioned.
  double inverse_trace() const;

  /// All eigenvalues >= -tol * ||F||.
  bool is_positive_semidefinite(double tol = 1e-10) const;

  /// W^T F W for the parameter map g' = W g.
  Fisher3 congruence(const Eigen::Matrix3d& w) const;

 private:
  Eigen::Matrix3d m_;
  std::optional<Eigen::Matrix3d> frame_;  // F before an orthogonal congruence
};

/// Gradient of u^T G u with respect to (g1, g2, g3) at u = (cos t, sin t):
/// (cos^2 t, sin^2 t, sqrt2 sin t cos t).
Eigen::Vector3d quadrature_gradient(double theta);

/// Orthogonal 3x3 map W with g' = W g, where g' are the coordinates of
/// R(phi)^T G R(phi).
Eigen::Matrix3d rotation_parameter_map(double phi);

/// 2 Tr G (Tr G + 3 sqrt(det G)) evaluated on an arbitrary covariance.
double crb_hom_form(const Covariance2& g);
/// 2 [(Tr G)^2 - det G] evaluated on an arbitrary covariance.
double crb_het_form(const Covariance2& g);

/// Cramer-Rao bound for homodyne tomography (continuous angle sweep).
double crb_hom(const GaussianStateSpec& spec);
/// Cramer-Rao bound for heterodyne tomography.
double crb_het(const GaussianStateSpec& spec);

enum class CrbForm { HomodyneForm, HeterodyneForm };

/// Either closed form evaluated on G_W itself (no efficiency or
/// Arthurs-Kelly offsets).
double crb_hypothetical(const GaussianStateSpec& spec, CrbForm form);

/// Closed-form homodyne Fisher matrix, built from the beta-parametrized
/// eigenframe expression and transported back to the spec's orientation.
/// Near-degenerate G_hom (|a - b| < 1e-8 Tr) uses the isotropic limit.
Fisher3 fisher_hom_closed(const GaussianStateSpec& spec);

/// Numerical integral of the single-quadrature Fisher matrix over the
/// angle sweep, (1/pi) int_0^pi f(theta) d theta, using `nodes` trapezoid
/// points in a remapped angle that de-peaks the integrand. nodes >= 8.
Fisher3 fisher_hom_quadrature(const GaussianStateSpec& spec, int nodes);

/// Heterodyne Fisher matrix, diagonal in the eigenframe of G_het.
Fisher3 fisher_het(const GaussianStateSpec& spec);

/// (Tr G_hom + 2 sqrt(det G_hom)) / (g1 - g2) in the frame aligned with the
/// spec's axes (g1 the squeezed direction). Absent for degenerate G_hom.
std::optional<double> homodyne_beta(const GaussianStateSpec& spec);

enum class GammaMode { Real, Hypothetical };

struct CrbReport {
  double h_hom = 0.0;
  double h_het = 0.0;
  double gamma = 0.0;
  std::optional<double> beta;
  GaussianStateSpec spec;
};

CrbReport crb_report(const GaussianStateSpec& spec, GammaMode mode);

/// gamma = H_het / H_hom as a ratio of closed forms.
double gamma_ratio(const GaussianStateSpec& spec, GammaMode mode = GammaMode::Real);

struct GammaGrid {
  std::vector<double> lambda;
  std::vector<double> mu;
  double eta = 1.0;
};

/// Row-major (lambda outer, mu inner) table of reports.
std::vector<CrbReport> gamma_surface(const GammaGrid& grid, GammaMode mode);

/// Smallest lambda in [1, 1e6] where the real-mode gamma crosses one,
/// bracketed by doubling and refined by bisection to 1e-9. Empty when no
/// crossing is found.
std::optional<double> critical_lambda_for_gamma(double mu, double eta);

struct SmallEtaLimits {
  double limit_het = 0.0;
  double limit_hom = 0.0;
};

/// Extrapolates eta^2 H_het and eta^2 H_hom to eta -> 0 (Richardson on a
/// halving sequence). `spec_at_eta` supplies the state for a given eta.
SmallEtaLimits small_eta_asymptote(const std::function<GaussianStateSpec(double)>& spec_at_eta);
SmallEtaLimits small_eta_asymptote(double mu, double lambda);

}  // namespace gausstomo
