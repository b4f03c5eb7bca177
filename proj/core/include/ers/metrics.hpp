#pragma once

#include <map>
#include <string>
#include <vector>

#include "ers/solver.hpp"
#include "ers/trajectory.hpp"
#include "ers/tube.hpp"

namespace ers {

struct MetricsRow {
  std::string mode;
  double alpha = 1.0;
  double accuracy = 0.0;
  double precision = 0.0;
  double mean_cumulative_error = 0.0;
  double baseline_accuracy = 0.0;  // uniform-rejection reference, equals alpha
};

struct MetricsReport {
  std::vector<MetricsRow> rows;
  std::size_t validation_size = 0;
  std::size_t skipped_zero_speed = 0;  // excluded from precision
};

/// Mean containment indicator over the validation set; theta assigns each
/// validation trajectory the mode whose tube applies.
double accuracy(const ChannelDataset& validation, const std::map<std::string, Tube>& tubes,
                const std::vector<std::string>& theta);

/// Constant-velocity baseline set: each position channel spans
/// [-v*t*dt, +v*t*dt] at step t.
Tube constant_velocity_set(double v, std::size_t horizon, double dt);

/// Mean per-sample shrinkage 1 - area(tube)/area(R(v_j)), clamped to [0, 1].
/// Zero-speed samples are excluded (reported via MetricsReport).
double precision(const ChannelDataset& validation, const std::map<std::string, Tube>& tubes,
                 const std::vector<std::string>& theta, const std::vector<double>& speeds);

/// One report row per alpha across per-mode sweeps on a common grid, with
/// the uniform-rejection baseline column.
MetricsReport tradeoff_curve(const ChannelDataset& validation,
                             const std::map<std::string, SweepResult>& sweeps,
                             const std::vector<std::string>& theta,
                             const std::vector<double>& speeds);

void write_report_csv(const MetricsReport& report, const std::string& path);

}  // namespace ers
