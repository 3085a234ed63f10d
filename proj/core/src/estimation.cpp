#include "gausstomo/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "gausstomo/fisher.hpp"

namespace gausstomo {

HomodyneLikelihood::HomodyneLikelihood(std::span<const QuadratureSample> data) {
  v_.reserve(data.size());
  x2_.reserve(data.size());
  theta_.reserve(data.size());
  for (const QuadratureSample& s : data) {
    v_.push_back(quadrature_gradient(s.theta));
    x2_.push_back(s.x * s.x);
    theta_.push_back(reduce_mod_pi(s.theta));
  }
}

double HomodyneLikelihood::value(const Covariance2& g) const {
  const Eigen::Vector3d gv(g.g1, g.g2, g.g3);
  double sum = 0.0;
  for (std::size_t j = 0; j < v_.size(); ++j) {
    const double c = v_[j].dot(gv);
    if (!(c > 0.0)) return -std::numeric_limits<double>::infinity();
    sum += x2_[j] / c + std::log(c);
  }
  return -0.5 * sum;
}

HomodyneLikelihood::Derivatives HomodyneLikelihood::derivatives(const Covariance2& g) const {
  const Eigen::Vector3d gv(g.g1, g.g2, g.g3);
  Derivatives d;
  double sum = 0.0;
  for (std::size_t j = 0; j < v_.size(); ++j) {
    const double c = v_[j].dot(gv);
    if (!(c > 0.0)) {
      d.value = -std::numeric_limits<double>::infinity();
      return d;
    }
    const double inv = 1.0 / c;
    const double r = x2_[j] * inv;
    sum += r + std::log(c);
    d.gradient += (0.5 * inv * (r - 1.0)) * v_[j];
    d.hessian += (0.5 * inv * inv * (1.0 - 2.0 * r)) * (v_[j] * v_[j].transpose());
  }
  d.value = -0.5 * sum;
  return d;
}

Covariance2 HomodyneLikelihood::linear_inversion() const {
  Eigen::Matrix3d normal = Eigen::Matrix3d::Zero();
  Eigen::Vector3d rhs = Eigen::Vector3d::Zero();
  for (std::size_t j = 0; j < v_.size(); ++j) {
    normal += v_[j] * v_[j].transpose();
    rhs += x2_[j] * v_[j];
  }
  const Eigen::Vector3d g = normal.ldlt().solve(rhs);
  return {g(0), g(1), g(2)};
}

std::size_t HomodyneLikelihood::distinct_angles() const {
  constexpr double kSeparation = 1e-12;
  if (theta_.empty()) return 0;
  std::vector<double> sorted = theta_;
  std::sort(sorted.begin(), sorted.end());
  std::size_t count = 1;
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] > kSeparation) ++count;
  }
  // theta near pi is the same direction as theta near 0.
  if (count > 1 && sorted.front() + std::numbers::pi - sorted.back() <= kSeparation) --count;
  return count;
}

namespace {

// Unconstrained coordinates p = (a, c, b) with L = [[e^a, 0], [c, e^b]] and
// G = L L^T, so g1 = e^{2a}, g3 = sqrt2 e^a c, g2 = c^2 + e^{2b}.
struct CholeskyPoint {
  Eigen::Vector3d p;

  static CholeskyPoint from_covariance(const Covariance2& g) {
    const double l11 = std::sqrt(g.xx());
    const double l21 = g.xp() / l11;
    const double l22 = std::sqrt(g.pp() - l21 * l21);
    return {Eigen::Vector3d(std::log(l11), l21, std::log(l22))};
  }

  Covariance2 covariance() const {
    const double ea = std::exp(p(0));
    const double eb = std::exp(p(2));
    return {ea * ea, p(1) * p(1) + eb * eb, std::numbers::sqrt2 * ea * p(1)};
  }

  // Rows: g1, g2, g3; columns: a, c, b.
  Eigen::Matrix3d jacobian() const {
    const double ea = std::exp(p(0));
    const double eb = std::exp(p(2));
    Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
    j(0, 0) = 2.0 * ea * ea;
    j(1, 1) = 2.0 * p(1);
    j(1, 2) = 2.0 * eb * eb;
    j(2, 0) = std::numbers::sqrt2 * ea * p(1);
    j(2, 1) = std::numbers::sqrt2 * ea;
    return j;
  }

  // sum_k w_k d^2 g_k / dp dp^T
  Eigen::Matrix3d curvature(const Eigen::Vector3d& w) const {
    const double ea = std::exp(p(0));
    const double eb = std::exp(p(2));
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    h(0, 0) = 4.0 * ea * ea * w(0) + std::numbers::sqrt2 * ea * p(1) * w(2);
    h(0, 1) = h(1, 0) = std::numbers::sqrt2 * ea * w(2);
    h(1, 1) = 2.0 * w(1);
    h(2, 2) = 4.0 * eb * eb * w(1);
    return h;
  }
};

Covariance2 initial_guess(const HomodyneLikelihood& lik, std::span<const QuadratureSample> data) {
  const Covariance2 lin = lik.linear_inversion();
  if (lin.is_positive_definite() && std::isfinite(lin.det())) return lin;
  double mean_x2 = 0.0;
  for (const QuadratureSample& s : data) mean_x2 += s.x * s.x;
  mean_x2 /= static_cast<double>(data.size());
  if (!(mean_x2 > 0.0)) mean_x2 = 1.0;
  return Covariance2::identity(mean_x2);
}

}  // namespace

bool is_physical(const Covariance2& g_wigner) {
  return g_wigner.is_positive_definite() && g_wigner.det() >= 0.25 - kPhysicalityTolerance;
}

EstimationResult estimate_homodyne_ml(std::span<const QuadratureSample> data, double eta,
                                      const HomodyneMlOptions& options) {
  if (data.empty()) {
    throw std::invalid_argument("estimate_homodyne_ml: no data");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("estimate_homodyne_ml: eta must lie in (0, 1]");
  }
  const HomodyneLikelihood lik(data);
  if (lik.distinct_angles() < 3) {
    throw std::invalid_argument("estimate_homodyne_ml: need at least three distinct angles, got " +
                                std::to_string(lik.distinct_angles()));
  }
  const double n = static_cast<double>(data.size());

  CholeskyPoint point = CholeskyPoint::from_covariance(initial_guess(lik, data));
  EstimationResult result;
  result.scheme = SchemeKind::Homodyne;
  result.n = data.size();

  HomodyneLikelihood::Derivatives d = lik.derivatives(point.covariance());
  int iter = 0;
  for (;; ++iter) {
    const Covariance2 g = point.covariance();
    result.gradient_norm = d.gradient.norm() * g.trace() / n;
    if (result.gradient_norm <= options.gradient_tolerance) {
      result.converged = true;
      break;
    }
    if (iter >= options.max_iterations) break;

    const Eigen::Matrix3d jac = point.jacobian();
    const Eigen::Vector3d grad_p = jac.transpose() * d.gradient;
    const Eigen::Matrix3d hess_p = jac.transpose() * d.hessian * jac + point.curvature(d.gradient);

    Eigen::Vector3d step;
    const Eigen::LLT<Eigen::Matrix3d> llt(-hess_p);
    if (llt.info() == Eigen::Success) {
      step = llt.solve(grad_p);
    } else {
      // Indefinite Hessian: steepest ascent scaled by the curvature magnitude.
      step = grad_p / std::max(hess_p.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    }

    const double slack = 1e-12 * (1.0 + std::abs(d.value));
    double t = 1.0;
    bool accepted = false;
    HomodyneLikelihood::Derivatives trial;
    CholeskyPoint candidate = point;
    for (int halving = 0; halving < 60; ++halving, t *= 0.5) {
      candidate.p = point.p + t * step;
      trial = lik.derivatives(candidate.covariance());
      if (std::isfinite(trial.value) && trial.value >= d.value - slack) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    point = candidate;
    d = trial;
  }

  result.iterations = iter;
  result.g_effective = point.covariance();
  result.loglik = d.value;
  result.g_wigner = result.g_effective.shifted(-homodyne_offset(eta));
  result.physical = is_physical(result.g_wigner);
  return result;
}

EstimationResult estimate_heterodyne(std::span<const PhaseSpaceSample> data, double eta) {
  if (data.size() < 2) {
    throw std::invalid_argument("estimate_heterodyne: need at least two samples");
  }
  if (!(eta > 0.0 && eta <= 1.0)) {
    throw std::domain_error("estimate_heterodyne: eta must lie in (0, 1]");
  }
  double sxx = 0.0, sxp = 0.0, spp = 0.0;
  for (const PhaseSpaceSample& s : data) {
    sxx += s.x * s.x;
    sxp += s.x * s.p;
    spp += s.p * s.p;
  }
  const double n = static_cast<double>(data.size());
  const Covariance2 second_moment = Covariance2::from_entries(sxx / n, sxp / n, spp / n);

  EstimationResult result;
  result.scheme = SchemeKind::Heterodyne;
  result.n = data.size();
  result.g_effective = second_moment;
  result.g_wigner = second_moment.shifted(-heterodyne_offset(eta));
  const double det = second_moment.det();
  // -1/2 sum_j [s_j^T S^-1 s_j + ln det S] = -(N/2)(2 + ln det S) at S = sample moment.
  result.loglik = det > 0.0 ? -0.5 * n * (2.0 + std::log(det)) : std::numeric_limits<double>::infinity();
  result.converged = true;
  result.physical = is_physical(result.g_wigner);
  return result;
}

double hs_distance_sq(const Covariance2& a, const Covariance2& b) {
  const Covariance2 d = a - b;
  return d.g1 * d.g1 + d.g2 * d.g2 + d.g3 * d.g3;
}

UncertaintyEllipse to_ellipse(const Covariance2& cov) {
  const Eigen2 e = eigen_decompose(cov);
  if (!(e.minor > 0.0)) {
    throw NotPositiveDefinite("to_ellipse: covariance has non-positive eigenvalue " + std::to_string(e.minor),
                              e.minor);
  }
  return {std::sqrt(e.major), std::sqrt(e.minor), e.major_angle};
}

Covariance2 project_eigenvalues(const Covariance2& cov, double floor) {
  const Eigen2 e = eigen_decompose(cov);
  const double major = std::max(e.major, floor);
  const double minor = std::max(e.minor, floor);
  return Covariance2{major, minor, 0.0}.rotated(e.major_angle);
}

}  // namespace gausstomo
