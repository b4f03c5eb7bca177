#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ers/classifier.hpp"
#include "ers/trajectory.hpp"

namespace ers {

/// Lane geometry: two straight lanes, one-way.
inline constexpr double kLaneWidth = 3.7;

struct ScenarioParams {
  double ego_speed = 17.5;       // m/s, within the desired band
  int ego_lane = 0;              // 0 or 1
  int vehicle_count = 1;         // surrounding vehicles, 1..3
  double lead_initial_speed = 17.5;
  double lead_final_speed = 17.5;
  double desired_speed_min = 15.0;
  double desired_speed_max = 20.0;
  double outlier_rate = 0.0;     // in [0, 1]
  double lateral_noise = 0.05;   // m
  double speed_noise = 0.1;      // m/s
  std::uint64_t seed = 0;

  void validate() const;
};

struct ScenarioLog {
  std::string id;
  double dt = 0.1;
  // Per-step ego state.
  std::vector<double> x, y, speed, heading;
  std::vector<EnvObservation> observations;
  std::vector<bool> blinker;
  std::vector<ModeLabel> modes;  // ground truth, derived from the blinker
  bool outlier = false;

  std::size_t steps() const { return x.size(); }
};

/// Cartesian product of per-parameter option lists, each combination with a
/// distinct derived seed. Recognized keys: ego_speed, ego_lane,
/// vehicle_count, lead_initial_speed, lead_final_speed, outlier_rate.
std::vector<ScenarioParams> generate_grid(
    const ScenarioParams& base, const std::map<std::string, std::vector<double>>& variations);

/// Deterministic closed-loop rollout: lane keeping with bounded noise; a
/// slowing lead triggers a lane change (blinker 1-2 s earlier) only when the
/// adjacent lane has room; outliers get an exaggerated lateral or braking
/// excursion.
ScenarioLog simulate(const ScenarioParams& params, std::size_t horizon, double dt);

/// Throws unless the log satisfies the kinematic-consistency invariant.
void validate_log(const ScenarioLog& log);

struct ExportPaths {
  std::string trajectories_csv;
  std::string labels_csv;
  std::string features_csv;
};

/// Emit the CSV artifacts consumed downstream: trajectory file with channels
/// (x, y, speed, heading), per-trajectory mode labels, per-step features.
void export_dataset(const std::vector<ScenarioLog>& logs, const ExportPaths& paths);

/// Trajectory-level mode: lane_changing if any step is lane_changing.
ModeLabel trajectory_mode(const ScenarioLog& log);

}  // namespace ers
