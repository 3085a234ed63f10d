#include "gausstomo/covariance.hpp"

#include <stdexcept>

namespace gausstomo {

double Covariance2::quadratic_form(double theta) const {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return g1 * c * c + g2 * s * s + kSqrt2 * g3 * s * c;
}

Covariance2 Covariance2::rotated(double phi) const {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  const double a = xx();
  const double b = xp();
  const double d = pp();
  const double r11 = c * c * a - 2.0 * c * s * b + s * s * d;
  const double r22 = s * s * a + 2.0 * c * s * b + c * c * d;
  const double r12 = c * s * (a - d) + (c * c - s * s) * b;
  return from_entries(r11, r12, r22);
}

Covariance2 Covariance2::inverse() const {
  const double d = det();
  const double scale = g1 * g1 + g2 * g2 + 0.5 * g3 * g3;
  if (std::abs(d) <= 1e-14 * scale || !std::isfinite(d)) {
    throw std::domain_error("Covariance2::inverse: singular matrix");
  }
  return from_entries(pp() / d, -xp() / d, xx() / d);
}

Eigen2 eigen_decompose(const Covariance2& cov) {
  const double half_trace = 0.5 * cov.trace();
  const double half_diff = 0.5 * (cov.xx() - cov.pp());
  const double off = cov.xp();
  const double radius = std::hypot(half_diff, off);
  Eigen2 out;
  out.major = half_trace + radius;
  // Avoid cancellation for the small eigenvalue: minor = det / major.
  out.minor = out.major != 0.0 ? cov.det() / out.major : half_trace - radius;
  out.major_angle = radius == 0.0 ? 0.0 : reduce_mod_pi(0.5 * std::atan2(2.0 * off, 2.0 * half_diff));
  return out;
}

double reduce_mod_pi(double angle) {
  double r = std::fmod(angle, std::numbers::pi);
  if (r < 0.0) r += std::numbers::pi;
  if (r >= std::numbers::pi) r = 0.0;
  return r;
}

}  // namespace gausstomo
