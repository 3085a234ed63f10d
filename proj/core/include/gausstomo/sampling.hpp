#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gausstomo/random.hpp"
#include "gausstomo/state.hpp"

namespace gausstomo {

/// One homodyne record: local-oscillator phase and measured quadrature.
struct QuadratureSample {
  double theta = 0.0;
  double x = 0.0;
  friend bool operator==(const QuadratureSample&, const QuadratureSample&) = default;
};

/// One heterodyne record: simultaneously measured quadrature pair.
struct PhaseSpaceSample {
  double x = 0.0;
  double p = 0.0;
  friend bool operator==(const PhaseSpaceSample&, const PhaseSpaceSample&) = default;
};

/// How local-oscillator phases are chosen shot by shot.
struct AnglePolicy {
  enum class Kind { ContinuousSweep, UniformGrid };

  Kind kind = Kind::ContinuousSweep;
  std::size_t d = 0;  // number of grid angles for UniformGrid

  static AnglePolicy continuous_sweep() { return {}; }
  static AnglePolicy uniform_grid(std::size_t d) { return {Kind::UniformGrid, d}; }

  /// "continuous" or "grid:<d>".
  std::string to_string() const;
  static AnglePolicy parse(const std::string& text);

  friend bool operator==(const AnglePolicy&, const AnglePolicy&) = default;
};

/// Homodyne shots with x ~ N(0, C(theta)), C(theta) = u^T G_hom u.
/// ContinuousSweep draws theta uniformly on [0, pi); UniformGrid assigns
/// shot i to theta = (i mod d) pi / d. Shot i depends only on (seed, i).
std::vector<QuadratureSample> sample_homodyne(const GaussianStateSpec& spec, std::size_t n,
                                              const AnglePolicy& policy, const SeedSpec& seed);

/// Fills `out` with shots first_index, first_index + 1, ... of the stream.
void sample_homodyne_into(const GaussianStateSpec& spec, const AnglePolicy& policy, const SeedSpec& seed,
                          std::uint64_t first_index, std::span<QuadratureSample> out);

/// I.i.d. draws from N(0, G_het) via the Cholesky factor of G_het.
std::vector<PhaseSpaceSample> sample_heterodyne(const GaussianStateSpec& spec, std::size_t n,
                                                const SeedSpec& seed);

void sample_heterodyne_into(const GaussianStateSpec& spec, const SeedSpec& seed, std::uint64_t first_index,
                            std::span<PhaseSpaceSample> out);

}  // namespace gausstomo
