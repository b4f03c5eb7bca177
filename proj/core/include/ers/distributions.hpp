#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ers/solver.hpp"
#include "ers/trajectory.hpp"

namespace ers {

enum class DistributionKind { kUniform, kNormal, kLognormal, kExtremeValue };

DistributionKind distribution_kind_from_string(const std::string& s);
std::string to_string(DistributionKind k);

/// Sampling spec for the known-distribution validation. For the Gumbel
/// (extreme value) family, a is the location and b the scale; for uniform,
/// [a, b]; for normal, mean/stddev; for lognormal, log-mean/log-stddev.
struct DistributionSpec {
  DistributionKind kind = DistributionKind::kNormal;
  double a = 0.0;
  double b = 1.0;
  std::size_t sample_count = 1;
  std::uint64_t seed = 0;

  void validate() const;
  /// Analytic quantile function.
  double quantile(double p) const;
};

/// Draw N single-channel trajectories over the horizon; every entry is an
/// independent inverse-CDF draw from a counter-based stream, so datasets
/// are reproducible across platforms.
ChannelDataset sample_dataset(const DistributionSpec& spec, std::size_t horizon,
                              double dt = 1.0);

/// Central interval [Q((1-alpha)/2), Q((1+alpha)/2)].
std::pair<double, double> quantile_interval(const DistributionSpec& spec, double alpha);

struct AreaReductionCurve {
  std::vector<double> rejection_ratios;  // 1 - alpha, nondecreasing
  std::vector<double> mean_delta_area;   // normalized to [0, 1]
  std::vector<double> min_delta_area;
  std::vector<double> max_delta_area;
  std::size_t trials = 0;
};

/// Normalized area reduction per grid point of one sweep: dA = (A(1) - A(alpha)) / A(1).
std::vector<double> normalized_area_reduction(const SweepResult& sweep);

/// Aggregate area-reduction trajectories across trial sweeps (same grid).
AreaReductionCurve area_reduction_curve(const std::vector<SweepResult>& trials);

/// Smallest rejection ratio after which every subsequent per-step decrease
/// stays below slope_fraction times the initial per-step decrease.
std::optional<double> detect_typical_set(const AreaReductionCurve& curve, double slope_fraction);

void write_curve_csv(const AreaReductionCurve& curve, const std::string& path);

}  // namespace ers
