#include "ers/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "ers/errors.hpp"
#include "ers/rng.hpp"

namespace ers {

DistributionKind distribution_kind_from_string(const std::string& s) {
  if (s == "uniform") return DistributionKind::kUniform;
  if (s == "normal") return DistributionKind::kNormal;
  if (s == "lognormal") return DistributionKind::kLognormal;
  if (s == "extreme_value" || s == "gumbel") return DistributionKind::kExtremeValue;
  throw InvalidParametersError("unknown distribution kind '" + s + "'");
}

std::string to_string(DistributionKind k) {
  switch (k) {
    case DistributionKind::kUniform: return "uniform";
    case DistributionKind::kNormal: return "normal";
    case DistributionKind::kLognormal: return "lognormal";
    case DistributionKind::kExtremeValue: return "extreme_value";
  }
  return "?";
}

void DistributionSpec::validate() const {
  if (sample_count < 1) throw InvalidParametersError("sample count must be >= 1");
  switch (kind) {
    case DistributionKind::kUniform:
      if (!(b > a)) throw InvalidParametersError("uniform requires b > a");
      break;
    case DistributionKind::kNormal:
    case DistributionKind::kLognormal:
    case DistributionKind::kExtremeValue:
      if (!(b > 0.0)) throw InvalidParametersError("scale parameter must be positive");
      break;
  }
}

double DistributionSpec::quantile(double p) const {
  if (!(p > 0.0 && p < 1.0)) throw AlphaOutOfRangeError("quantile requires p in (0,1)");
  switch (kind) {
    case DistributionKind::kUniform:
      return a + (b - a) * p;
    case DistributionKind::kNormal:
      return a + b * standard_normal_quantile(p);
    case DistributionKind::kLognormal:
      return std::exp(a + b * standard_normal_quantile(p));
    case DistributionKind::kExtremeValue:
      // Gumbel (max) family.
      return a - b * std::log(-std::log(p));
  }
  return 0.0;
}

ChannelDataset sample_dataset(const DistributionSpec& spec, std::size_t horizon, double dt) {
  spec.validate();
  ChannelDataset d;
  d.channel_names = {to_string(spec.kind)};
  d.channel_indices = {0};
  d.dt = dt;
  d.num_trajectories = spec.sample_count;
  d.num_steps = horizon + 1;
  d.num_channels = 1;
  d.values.resize(d.num_trajectories * d.num_steps);
  CounterRng rng(spec.seed);
  for (double& v : d.values) v = spec.quantile(rng.next_uniform01());
  return d;
}

std::pair<double, double> quantile_interval(const DistributionSpec& spec, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw AlphaOutOfRangeError("alpha must be in (0,1)");
  return {spec.quantile((1.0 - alpha) / 2.0), spec.quantile((1.0 + alpha) / 2.0)};
}

std::vector<double> normalized_area_reduction(const SweepResult& sweep) {
  if (sweep.entries.empty()) throw GridMismatchError("sweep has no entries");
  const double baseline = sweep.entries.front().solution.area;
  if (sweep.entries.front().alpha != 1.0) {
    throw GridMismatchError("area-reduction normalization requires the grid to start at alpha=1");
  }
  std::vector<double> out;
  out.reserve(sweep.entries.size());
  for (const auto& entry : sweep.entries) {
    double da = baseline > 0.0 ? (baseline - entry.solution.area) / baseline : 0.0;
    out.push_back(std::clamp(da, 0.0, 1.0));
  }
  return out;
}

AreaReductionCurve area_reduction_curve(const std::vector<SweepResult>& trials) {
  if (trials.empty()) throw GridMismatchError("no trials");
  AreaReductionCurve curve;
  curve.trials = trials.size();
  const auto& grid = trials.front().entries;
  for (const auto& entry : grid) curve.rejection_ratios.push_back(1.0 - entry.alpha);
  const std::size_t points = grid.size();
  curve.mean_delta_area.assign(points, 0.0);
  curve.min_delta_area.assign(points, std::numeric_limits<double>::infinity());
  curve.max_delta_area.assign(points, -std::numeric_limits<double>::infinity());
  for (const auto& trial : trials) {
    if (trial.entries.size() != points) throw GridMismatchError("trial grids differ");
    std::vector<double> da = normalized_area_reduction(trial);
    for (std::size_t i = 0; i < points; ++i) {
      curve.mean_delta_area[i] += da[i];
      curve.min_delta_area[i] = std::min(curve.min_delta_area[i], da[i]);
      curve.max_delta_area[i] = std::max(curve.max_delta_area[i], da[i]);
    }
  }
  for (double& v : curve.mean_delta_area) v /= static_cast<double>(curve.trials);
  return curve;
}

std::optional<double> detect_typical_set(const AreaReductionCurve& curve,
                                         double slope_fraction) {
  const std::size_t points = curve.rejection_ratios.size();
  if (points < 3) throw CurveTooShortError("need at least 3 curve points");
  if (!(slope_fraction > 0.0 && slope_fraction < 1.0)) {
    throw InvalidParametersError("slope_fraction must be in (0,1)");
  }
  const double initial = curve.mean_delta_area[1] - curve.mean_delta_area[0];
  const double threshold = slope_fraction * initial;
  for (std::size_t j = 1; j + 1 < points; ++j) {
    bool plateau = true;
    for (std::size_t s = j; s + 1 < points; ++s) {
      if (curve.mean_delta_area[s + 1] - curve.mean_delta_area[s] >= threshold) {
        plateau = false;
        break;
      }
    }
    if (plateau) return curve.rejection_ratios[j];
  }
  return std::nullopt;
}

void write_curve_csv(const AreaReductionCurve& curve, const std::string& path) {
  std::ofstream out(path);
  out << "rejection_ratio,mean_dA,min_dA,max_dA\n";
  out.precision(17);
  for (std::size_t i = 0; i < curve.rejection_ratios.size(); ++i) {
    out << curve.rejection_ratios[i] << ',' << curve.mean_delta_area[i] << ','
        << curve.min_delta_area[i] << ',' << curve.max_delta_area[i] << '\n';
  }
}

}  // namespace ers
