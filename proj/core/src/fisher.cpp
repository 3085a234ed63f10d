#include "gausstomo/fisher.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace gausstomo {

namespace {

constexpr double kDegenerateRelTol = 1e-8;

// Frame in which G is diagonal with the smaller eigenvalue first.
struct Eigenframe {
  double small = 0.0;  // eigenvalue along `angle`
  double large = 0.0;  // eigenvalue along `angle + pi/2`
  double angle = 0.0;
};

Eigenframe eigenframe(const Covariance2& g) {
  const Eigen2 e = eigen_decompose(g);
  return {e.minor, e.major, reduce_mod_pi(e.major_angle + 0.5 * std::numbers::pi)};
}

Fisher3 isotropic_hom_fisher(double c) {
  // Angle averages <cos^4> = <sin^4> = 3/8, <cos^2 sin^2> = 1/8.
  Eigen::Matrix3d m;
  m << 3.0 / 8.0, 1.0 / 8.0, 0.0,
       1.0 / 8.0, 3.0 / 8.0, 0.0,
       0.0, 0.0, 2.0 / 8.0;
  return Fisher3(m / (2.0 * c * c));
}

bool degenerate(const Eigenframe& f) {
  return std::abs(f.large - f.small) < kDegenerateRelTol * (f.large + f.small);
}

}  // namespace

double Fisher3::inverse_trace() const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(frame_.value_or(m_), Eigen::EigenvaluesOnly);
  const Eigen::Vector3d ev = solver.eigenvalues();
  const double largest = ev.cwiseAbs().maxCoeff();
  if (!(ev.minCoeff() > 1e-14 * largest)) {
    throw std::domain_error("Fisher3::inverse_trace: matrix is singular or indefinite");
  }
  return ev.cwiseInverse().sum();
}

bool Fisher3::is_positive_semidefinite(double tol) const {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> solver(m_, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff() >= -tol * m_.norm();
}

Fisher3 Fisher3::congruence(const Eigen::Matrix3d& w) const {
  Fisher3 out(w.transpose() * m_ * w);
  if ((w.transpose() * w - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() < 1e-12) {
    out.frame_ = frame_.value_or(m_);
  }
  return out;
}

Eigen::Vector3d quadrature_gradient(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c * c, s * s, std::numbers::sqrt2 * s * c};
}

Eigen::Matrix3d rotation_parameter_map(double phi) {
  Eigen::Matrix3d w;
  const std::array<Covariance2, 3> basis{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  for (int k = 0; k < 3; ++k) {
    const Covariance2 r = basis[k].rotated(-phi);
    w.col(k) << r.g1, r.g2, r.g3;
  }
  return w;
}

double crb_hom_form(const Covariance2& g) {
  const double t = g.trace();
  return 2.0 * t * (t + 3.0 * std::sqrt(g.det()));
}

double crb_het_form(const Covariance2& g) {
  const double t = g.trace();
  return 2.0 * (t * t - g.det());
}

double crb_hom(const GaussianStateSpec& spec) {
  return crb_hom_form(effective_covariance(spec, SchemeKind::Homodyne));
}

double crb_het(const GaussianStateSpec& spec) {
  return crb_het_form(effective_covariance(spec, SchemeKind::Heterodyne));
}

double crb_hypothetical(const GaussianStateSpec& spec, CrbForm form) {
  const Covariance2 g = effective_covariance(spec, SchemeKind::HypotheticalNoAK);
  return form == CrbForm::HomodyneForm ? crb_hom_form(g) : crb_het_form(g);
}

Fisher3 fisher_hom_closed(const GaussianStateSpec& spec) {
  const Eigenframe frame = eigenframe(effective_covariance(spec, SchemeKind::Homodyne));
  if (degenerate(frame)) {
    return isotropic_hom_fisher(0.5 * (frame.small + frame.large));
  }
  const double diff = frame.small - frame.large;
  const double beta = (frame.small + frame.large + 2.0 * std::sqrt(frame.small * frame.large)) / diff;
  const double b2m1 = beta * beta - 1.0;
  Eigen::Matrix3d m;
  m << (1.0 + 3.0 * beta) / std::pow(1.0 + beta, 3), 1.0 / b2m1, 0.0,
       1.0 / b2m1, (1.0 - 3.0 * beta) / std::pow(1.0 - beta, 3), 0.0,
       0.0, 0.0, 2.0 / b2m1;
  m /= diff * diff;
  return Fisher3(m).congruence(rotation_parameter_map(frame.angle));
}

Fisher3 fisher_hom_quadrature(const GaussianStateSpec& spec, int nodes) {
  if (nodes < 8) {
    throw std::invalid_argument("fisher_hom_quadrature: nodes must be >= 8");
  }
  const Covariance2 g = effective_covariance(spec, SchemeKind::Homodyne);
  const Eigenframe frame = eigenframe(g);
  if (!(frame.small > 0.0)) {
    throw std::domain_error("fisher_hom_quadrature: G_hom is not positive definite");
  }
  // tan(psi) = k tan(t) spreads the peak of 1/C^2 around the squeezed axis
  // so the periodic trapezoid keeps its geometric convergence.
  const double k = std::pow(frame.small / frame.large, 0.25);
  const double step = std::numbers::pi / nodes;
  Eigen::Matrix3d sum = Eigen::Matrix3d::Zero();
  for (int j = 0; j < nodes; ++j) {
    const double t = j * step;
    const double ct = std::cos(t);
    const double st = std::sin(t);
    const double psi = std::atan2(k * st, ct);
    const double dpsi = k / (ct * ct + k * k * st * st);
    const double theta = frame.angle + psi;
    const double c = g.quadratic_form(theta);
    if (!(c > 0.0)) {
      throw std::domain_error("fisher_hom_quadrature: non-positive marginal variance at node " +
                              std::to_string(j));
    }
    const Eigen::Vector3d v = quadrature_gradient(theta);
    sum += (dpsi / (2.0 * c * c)) * (v * v.transpose());
  }
  return Fisher3(sum / nodes);
}

Fisher3 fisher_het(const GaussianStateSpec& spec) {
  const Eigenframe frame = eigenframe(effective_covariance(spec, SchemeKind::Heterodyne));
  const double a = frame.small;
  const double b = frame.large;
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  m(0, 0) = 0.5 / (a * a);
  m(1, 1) = 0.5 / (b * b);
  m(2, 2) = 0.5 / (a * b);
  return Fisher3(m).congruence(rotation_parameter_map(frame.angle));
}

std::optional<double> homodyne_beta(const GaussianStateSpec& spec) {
  const Eigenframe frame = eigenframe(effective_covariance(spec, SchemeKind::Homodyne));
  if (degenerate(frame)) return std::nullopt;
  return (frame.small + frame.large + 2.0 * std::sqrt(frame.small * frame.large)) /
         (frame.small - frame.large);
}

CrbReport crb_report(const GaussianStateSpec& spec, GammaMode mode) {
  CrbReport r;
  r.spec = spec;
  if (mode == GammaMode::Real) {
    r.h_hom = crb_hom(spec);
    r.h_het = crb_het(spec);
    r.beta = homodyne_beta(spec);
  } else {
    r.h_hom = crb_hypothetical(spec, CrbForm::HomodyneForm);
    r.h_het = crb_hypothetical(spec, CrbForm::HeterodyneForm);
    GaussianStateSpec lossless = spec;
    lossless.eta = 1.0;
    r.beta = homodyne_beta(lossless);
  }
  r.gamma = r.h_het / r.h_hom;
  return r;
}

double gamma_ratio(const GaussianStateSpec& spec, GammaMode mode) {
  return crb_report(spec, mode).gamma;
}

std::vector<CrbReport> gamma_surface(const GammaGrid& grid, GammaMode mode) {
  std::vector<CrbReport> out;
  out.reserve(grid.lambda.size() * grid.mu.size());
  for (double lambda : grid.lambda) {
    for (double mu : grid.mu) {
      out.push_back(crb_report({mu, lambda, 0.0, grid.eta}, mode));
    }
  }
  return out;
}

std::optional<double> critical_lambda_for_gamma(double mu, double eta) {
  constexpr double kLambdaMax = 1e6;
  constexpr double kTol = 1e-9;
  auto excess = [&](double lambda) { return gamma_ratio({mu, lambda, 0.0, eta}) - 1.0; };

  double lo = 1.0;
  double f_lo = excess(lo);
  if (f_lo == 0.0) return lo;
  while (lo < kLambdaMax) {
    const double hi = std::min(2.0 * lo, kLambdaMax);
    const double f_hi = excess(hi);
    if (f_hi == 0.0) return hi;
    if ((f_lo < 0.0) != (f_hi < 0.0)) {
      double a = lo;
      double b = hi;
      while (b - a > kTol) {
        const double mid = 0.5 * (a + b);
        const double f_mid = excess(mid);
        if ((f_mid < 0.0) == (f_lo < 0.0)) {
          a = mid;
        } else {
          b = mid;
        }
      }
      return 0.5 * (a + b);
    }
    lo = hi;
    f_lo = f_hi;
  }
  return std::nullopt;
}

SmallEtaLimits small_eta_asymptote(const std::function<GaussianStateSpec(double)>& spec_at_eta) {
  constexpr int kLevels = 6;
  constexpr double kEta0 = 1e-2;
  std::array<std::array<double, kLevels>, 2> table{};
  double eta = kEta0;
  for (int k = 0; k < kLevels; ++k, eta *= 0.5) {
    const GaussianStateSpec spec = spec_at_eta(eta);
    table[0][k] = eta * eta * crb_het(spec);
    table[1][k] = eta * eta * crb_hom(spec);
  }
  // Neville-style Richardson for an expansion in integer powers of eta.
  for (auto& row : table) {
    for (int j = 1; j < kLevels; ++j) {
      const double factor = std::ldexp(1.0, j);
      for (int k = kLevels - 1; k >= j; --k) {
        row[k] = (factor * row[k] - row[k - 1]) / (factor - 1.0);
      }
    }
  }
  return {table[0][kLevels - 1], table[1][kLevels - 1]};
}

SmallEtaLimits small_eta_asymptote(double mu, double lambda) {
  return small_eta_asymptote([=](double eta) { return GaussianStateSpec{mu, lambda, 0.0, eta}; });
}

}  // namespace gausstomo
