#pragma once

#include <cstdint>

namespace ers {

/// Counter-based generator: output k is a pure function of (seed, k), so
/// streams are reproducible across platforms and splittable without state
/// hand-off. The mixer is SplitMix64.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : base_(mix(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)))) {}

  std::uint64_t next_u64() { return mix(base_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

  /// Uniform in (0, 1): never returns an exact endpoint, so inverse-CDF
  /// transforms stay finite.
  double next_uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Derive an independent stream deterministically (e.g. one per trial).
  CounterRng split(std::uint64_t stream) const { return CounterRng(base_, stream + 1); }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t base_;
  std::uint64_t counter_ = 0;
};

/// Quantile of the standard normal (Acklam's rational approximation,
/// relative error < 1.15e-9 across (0,1)).
double standard_normal_quantile(double p);

}  // namespace ers
