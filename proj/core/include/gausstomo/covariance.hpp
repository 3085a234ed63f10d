#pragma once

#include <array>
#include <cmath>
#include <numbers>

namespace gausstomo {

/// Symmetric 2x2 covariance matrix stored in the trace-orthonormal
/// coordinates (g1, g2, g3):
///
///     G = | g1        g3/sqrt2 |
///         | g3/sqrt2  g2       |
///
/// The basis {diag(1,0), diag(0,1), offdiag(1/sqrt2)} is orthonormal under
/// Tr(A B), so Euclidean distance in (g1, g2, g3) is the Hilbert-Schmidt
/// distance between matrices.
struct Covariance2 {
  double g1 = 0.0;
  double g2 = 0.0;
  double g3 = 0.0;

  static constexpr double kSqrt2 = std::numbers::sqrt2;

  /// Builds from plain matrix entries G11, G12 (= G21), G22.
  static constexpr Covariance2 from_entries(double g11, double g12, double g22) {
    return {g11, g22, kSqrt2 * g12};
  }
  static constexpr Covariance2 identity(double scale = 1.0) { return {scale, scale, 0.0}; }

  constexpr double xx() const { return g1; }
  constexpr double pp() const { return g2; }
  constexpr double xp() const { return g3 / kSqrt2; }

  constexpr double trace() const { return g1 + g2; }
  constexpr double det() const { return g1 * g2 - 0.5 * g3 * g3; }

  constexpr bool is_positive_definite() const { return g1 > 0.0 && g2 > 0.0 && det() > 0.0; }

  /// G + delta * I.
  constexpr Covariance2 shifted(double delta) const { return {g1 + delta, g2 + delta, g3}; }

  /// u^T G u for u = (cos theta, sin theta).
  double quadratic_form(double theta) const;

  /// R(phi) G R(phi)^T with R(phi) the counter-clockwise rotation.
  Covariance2 rotated(double phi) const;

  /// Inverse matrix; throws std::domain_error when singular.
  Covariance2 inverse() const;

  /// Row-major 2x2 entries.
  constexpr std::array<double, 4> entries() const { return {xx(), xp(), xp(), pp()}; }

  friend constexpr Covariance2 operator+(Covariance2 a, Covariance2 b) {
    return {a.g1 + b.g1, a.g2 + b.g2, a.g3 + b.g3};
  }
  friend constexpr Covariance2 operator-(Covariance2 a, Covariance2 b) {
    return {a.g1 - b.g1, a.g2 - b.g2, a.g3 - b.g3};
  }
  friend constexpr Covariance2 operator*(double s, Covariance2 a) {
    return {s * a.g1, s * a.g2, s * a.g3};
  }
  friend constexpr bool operator==(const Covariance2&, const Covariance2&) = default;
};

/// Eigen-decomposition of a symmetric 2x2 matrix. `major_angle` is the
/// direction of the eigenvector belonging to `major`, reduced to [0, pi);
/// for an isotropic matrix it is 0.
struct Eigen2 {
  double major = 0.0;
  double minor = 0.0;
  double major_angle = 0.0;
};

Eigen2 eigen_decompose(const Covariance2& cov);

/// Reduces an angle to [0, pi).
double reduce_mod_pi(double angle);

}  // namespace gausstomo
