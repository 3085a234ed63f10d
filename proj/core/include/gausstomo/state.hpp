#pragma once

#include <string_view>

#include "gausstomo/covariance.hpp"

namespace gausstomo {

/// Physical scenario for a zero-mean single-mode Gaussian state.
///
/// The Wigner covariance is R(phi) (mu/2) diag(1/lambda, lambda) R(phi)^T:
/// `mu` sets the overall size (det G_W = mu^2/4, so mu >= 1 is Heisenberg
/// physicality), `lambda` the squeezing, and `phi` the direction of the
/// squeezed axis, counter-clockwise from the first quadrature. `eta` is the
/// detector efficiency shared by both schemes.
struct GaussianStateSpec {
  double mu = 1.0;
  double lambda = 1.0;
  double phi = 0.0;
  double eta = 1.0;

  /// Throws std::domain_error unless mu >= 1 (with 1e-12 slack),
  /// lambda > 0, eta in (0, 1] and phi finite.
  void validate() const;

  /// Same state with lambda >= 1 and phi in [0, pi). A lambda below one is
  /// replaced by 1/lambda with phi shifted by pi/2.
  GaussianStateSpec canonical() const;

  friend bool operator==(const GaussianStateSpec&, const GaussianStateSpec&) = default;
};

inline constexpr double kPhysicalityTolerance = 1e-12;

enum class SchemeKind {
  Homodyne,
  Heterodyne,
  /// Thought experiment without Arthurs-Kelly noise: both offsets are zero.
  HypotheticalNoAK,
};

std::string_view to_string(SchemeKind scheme);
/// Parses "homodyne" | "heterodyne" | "hypothetical"; throws std::invalid_argument.
SchemeKind scheme_from_string(std::string_view name);

/// (1 - eta) / (2 eta)
double homodyne_offset(double eta);
/// (2 - eta) / (2 eta) = homodyne offset + 1 / (2 eta).
double heterodyne_offset(double eta);
/// Offset added to G_W for the given scheme (0 for HypotheticalNoAK).
double scheme_offset(SchemeKind scheme, double eta);

Covariance2 wigner_covariance(const GaussianStateSpec& spec);

/// G_W + delta(scheme, eta) I. Accepts all three schemes.
Covariance2 effective_covariance(const GaussianStateSpec& spec, SchemeKind scheme);

/// Husimi Q-function covariance G_W + I / (2 eta).
Covariance2 q_covariance(const GaussianStateSpec& spec);

struct SqueezingDb {
  double squeeze_db = 0.0;
  double antisqueeze_db = 0.0;
};

/// Minor and major Wigner variances relative to the vacuum level 1/2, in dB:
/// 10 log10(mu/lambda) and 10 log10(mu lambda).
SqueezingDb squeezing_db(const GaussianStateSpec& spec);

}  // namespace gausstomo
