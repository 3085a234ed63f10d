#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>

namespace gausstomo {

/// Identifies one reproducible random stream.
struct SeedSpec {
  std::uint64_t master_seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

/// Child stream for a sub-task (trial, sample-size index, scheme ...);
/// distinct tag lists give distinct stream ids with overwhelming probability.
SeedSpec derive_stream(const SeedSpec& parent, std::initializer_list<std::uint64_t> tags);

/// Philox-4x32-10 block cipher (Salmon et al., SC'11).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter,
                                         std::array<std::uint32_t, 2> key);

/// Counter-based generator: block `index` of a stream is a pure function of
/// (master_seed, stream_id, index), so any partition of the index range
/// reproduces the sequential output.
class CounterRng {
 public:
  explicit CounterRng(const SeedSpec& seed) : seed_(seed) {}

  /// Two 64-bit words for `index`.
  std::array<std::uint64_t, 2> block(std::uint64_t index) const;

  const SeedSpec& seed() const { return seed_; }

 private:
  SeedSpec seed_;
};

/// k 2^-53 for the top 53 bits: uniform on [0, 1).
double to_unit_closed_open(std::uint64_t bits);
/// (k + 1/2) 2^-52 for the top 52 bits: uniform on (0, 1), never 0 or 1.
double to_unit_open(std::uint64_t bits);

/// Inverse of the standard normal CDF (Wichura, AS 241, ~1e-16 relative).
/// Requires p in (0, 1).
double normal_quantile(double p);

}  // namespace gausstomo
