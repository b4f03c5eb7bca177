#include "ers/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "ers/errors.hpp"

namespace ers {

namespace {

const Tube& tube_for(const std::map<std::string, Tube>& tubes, const std::string& mode) {
  auto it = tubes.find(mode);
  if (it == tubes.end()) throw MissingTubeForModeError("no tube for mode '" + mode + "'");
  return it->second;
}

void check_validation(const ChannelDataset& validation, const std::vector<std::string>& theta) {
  if (validation.num_trajectories == 0) throw EmptyValidationSetError("empty validation set");
  if (theta.size() != validation.num_trajectories) {
    throw LabelCountMismatchError("mode assignment count does not match the validation set");
  }
}

}  // namespace

double accuracy(const ChannelDataset& validation, const std::map<std::string, Tube>& tubes,
                const std::vector<std::string>& theta) {
  check_validation(validation, theta);
  std::size_t inside = 0;
  for (std::size_t j = 0; j < validation.num_trajectories; ++j) {
    if (contains(tube_for(tubes, theta[j]), validation, j)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(validation.num_trajectories);
}

Tube constant_velocity_set(double v, std::size_t horizon, double dt) {
  if (v < 0.0) throw NegativeSpeedError("speed must be nonnegative");
  Tube t;
  t.dt = dt;
  t.weights = {1.0, 1.0};
  t.upper.assign(2, std::vector<double>(horizon + 1, 0.0));
  t.lower.assign(2, std::vector<double>(horizon + 1, 0.0));
  for (std::size_t step = 0; step <= horizon; ++step) {
    const double reach = v * static_cast<double>(step) * dt;
    for (std::size_t c = 0; c < 2; ++c) {
      t.upper[c][step] = reach;
      t.lower[c][step] = -reach;
    }
  }
  return t;
}

double precision(const ChannelDataset& validation, const std::map<std::string, Tube>& tubes,
                 const std::vector<std::string>& theta, const std::vector<double>& speeds) {
  check_validation(validation, theta);
  if (speeds.size() != validation.num_trajectories) {
    throw LabelCountMismatchError("speed count does not match the validation set");
  }
  double total = 0.0;
  std::size_t counted = 0;
  for (std::size_t j = 0; j < validation.num_trajectories; ++j) {
    if (speeds[j] < 0.0) throw NegativeSpeedError("negative validation speed");
    if (speeds[j] == 0.0) continue;  // R(0) has zero measure; reported separately
    const Tube& tube = tube_for(tubes, theta[j]);
    const double baseline =
        tube_area(constant_velocity_set(speeds[j], validation.num_steps - 1, validation.dt));
    if (baseline <= 0.0) throw ZeroBaselineAreaError("constant-velocity set has zero area");
    total += std::clamp(1.0 - tube_area(tube) / baseline, 0.0, 1.0);
    ++counted;
  }
  if (counted == 0) throw EmptyValidationSetError("no validation samples with positive speed");
  return total / static_cast<double>(counted);
}

MetricsReport tradeoff_curve(const ChannelDataset& validation,
                             const std::map<std::string, SweepResult>& sweeps,
                             const std::vector<std::string>& theta,
                             const std::vector<double>& speeds) {
  check_validation(validation, theta);
  if (sweeps.empty()) throw MissingTubeForModeError("no sweeps provided");

  // All sweeps must share one alpha grid.
  const auto& ref = sweeps.begin()->second.entries;
  for (const auto& [mode, sw] : sweeps) {
    if (sw.entries.size() != ref.size()) throw GridMismatchError("sweep grids differ");
    for (std::size_t k = 0; k < ref.size(); ++k) {
      if (sw.entries[k].alpha != ref[k].alpha) throw GridMismatchError("sweep grids differ");
    }
  }

  MetricsReport report;
  report.validation_size = validation.num_trajectories;
  for (double v : speeds) {
    if (v == 0.0) ++report.skipped_zero_speed;
  }

  for (std::size_t k = 0; k < ref.size(); ++k) {
    const double alpha = ref[k].alpha;
    std::map<std::string, Tube> tubes;
    for (const auto& [mode, sw] : sweeps) tubes.emplace(mode, sw.entries[k].solution.tube);

    double err = 0.0;
    for (std::size_t j = 0; j < validation.num_trajectories; ++j) {
      err += cumulative_error(tube_for(tubes, theta[j]), validation, j);
    }

    MetricsRow row;
    row.mode = sweeps.size() == 1 ? sweeps.begin()->first : "all";
    row.alpha = alpha;
    row.accuracy = accuracy(validation, tubes, theta);
    row.precision = precision(validation, tubes, theta, speeds);
    row.mean_cumulative_error = err / static_cast<double>(validation.num_trajectories);
    row.baseline_accuracy = alpha;
    report.rows.push_back(std::move(row));
  }
  return report;
}

void write_report_csv(const MetricsReport& report, const std::string& path) {
  std::ofstream out(path);
  out << "mode,alpha,accuracy,precision,cumulative_error,baseline_accuracy\n";
  out.precision(12);
  for (const auto& row : report.rows) {
    out << row.mode << ',' << row.alpha << ',' << row.accuracy << ',' << row.precision << ','
        << row.mean_cumulative_error << ',' << row.baseline_accuracy << '\n';
  }
}

}  // namespace ers
