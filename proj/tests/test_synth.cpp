#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "ers/errors.hpp"
#include "ers/synth.hpp"
#include "ers/trajectory.hpp"

using namespace ers;

namespace {

ScenarioParams keeping_params() {
  ScenarioParams p;
  p.ego_speed = 17.5;
  p.lead_initial_speed = 18.0;
  p.lead_final_speed = 18.0;  // lead never slows: no reason to change lanes
  p.vehicle_count = 1;
  p.seed = 5;
  return p;
}

ScenarioParams changing_params() {
  ScenarioParams p;
  p.ego_speed = 18.0;
  p.lead_initial_speed = 18.0;
  p.lead_final_speed = 8.0;  // strong slowdown forces a lane change
  p.vehicle_count = 1;       // adjacent lane free
  p.seed = 6;
  return p;
}

}  // namespace

TEST_CASE("simulate produces a consistent lane-keeping log") {
  auto log = simulate(keeping_params(), 120, 0.1);
  CHECK(log.steps() == 121);
  CHECK(log.y.size() == 121);
  CHECK(log.speed.size() == 121);
  CHECK(log.observations.size() == 121);
  CHECK(log.blinker.size() == 121);
  CHECK(log.modes.size() == 121);
  CHECK_FALSE(log.outlier);
  validate_log(log);

  for (auto m : log.modes) CHECK(m == ModeLabel::kLaneKeeping);
  for (bool b : log.blinker) CHECK_FALSE(b);
  // Stays near the starting lane center.
  double center = keeping_params().ego_lane * kLaneWidth;
  for (double y : log.y) CHECK(std::abs(y - center) < kLaneWidth / 2.0);
  // Forward progress every step.
  for (std::size_t t = 1; t < log.steps(); ++t) CHECK(log.x[t] > log.x[t - 1]);
}

TEST_CASE("slowing lead triggers a signaled lane change") {
  auto log = simulate(changing_params(), 200, 0.1);
  validate_log(log);
  CHECK(trajectory_mode(log) == ModeLabel::kLaneChanging);

  // The blinker comes on before any lateral motion out of the lane.
  std::size_t first_blink = log.steps();
  for (std::size_t t = 0; t < log.steps(); ++t) {
    if (log.blinker[t]) {
      first_blink = t;
      break;
    }
  }
  REQUIRE(first_blink < log.steps());
  double start_center = changing_params().ego_lane * kLaneWidth;
  for (std::size_t t = 0; t < first_blink; ++t) {
    CHECK(std::abs(log.y[t] - start_center) < kLaneWidth / 4.0);
  }
  // Mode labels follow the blinker rule exactly.
  auto want = label_transitions(log.blinker, log.steps() - 1);
  CHECK(log.modes == want);
  // Ends in the other lane.
  double end_center = (1 - changing_params().ego_lane) * kLaneWidth;
  CHECK(std::abs(log.y.back() - end_center) < kLaneWidth / 4.0);
}

TEST_CASE("displacement magnitude equals speed times dt") {
  for (auto p : {keeping_params(), changing_params()}) {
    auto log = simulate(p, 150, 0.1);
    for (std::size_t t = 1; t < log.steps(); ++t) {
      double dx = log.x[t] - log.x[t - 1];
      double dy = log.y[t] - log.y[t - 1];
      double dist = std::hypot(dx, dy);
      CHECK(dist == doctest::Approx(log.speed[t] * 0.1).epsilon(1e-9));
    }
  }
}

TEST_CASE("simulation is deterministic in the seed") {
  auto a = simulate(changing_params(), 100, 0.1);
  auto b = simulate(changing_params(), 100, 0.1);
  CHECK(a.x == b.x);
  CHECK(a.y == b.y);
  CHECK(a.speed == b.speed);
  CHECK(a.blinker == b.blinker);

  auto p = changing_params();
  p.seed = 7;
  auto c = simulate(p, 100, 0.1);
  CHECK(a.y != c.y);
}

TEST_CASE("outliers are flagged and exaggerated") {
  auto p = keeping_params();
  p.outlier_rate = 1.0;
  auto log = simulate(p, 120, 0.1);
  CHECK(log.outlier);
  validate_log(log);

  auto clean = simulate(keeping_params(), 120, 0.1);
  double max_dev = 0.0, max_dev_clean = 0.0;
  double center = p.ego_lane * kLaneWidth;
  for (std::size_t t = 0; t < log.steps(); ++t) {
    max_dev = std::max(max_dev, std::abs(log.y[t] - center));
    max_dev_clean = std::max(max_dev_clean, std::abs(clean.y[t] - center));
  }
  double min_speed = *std::min_element(log.speed.begin(), log.speed.end());
  double min_speed_clean = *std::min_element(clean.speed.begin(), clean.speed.end());
  // Either a swerve or hard braking, so at least one signature is present.
  CHECK((max_dev > max_dev_clean + 0.3 || min_speed < min_speed_clean - 1.0));
}

TEST_CASE("grid generation covers the product with distinct seeds") {
  ScenarioParams base;
  base.seed = 100;
  auto grid = generate_grid(base, {{"ego_speed", {15.0, 17.5, 20.0}}, {"ego_lane", {0, 1}}});
  REQUIRE(grid.size() == 6);
  std::size_t lane1 = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (grid[i].ego_lane == 1) ++lane1;
    for (std::size_t j = i + 1; j < grid.size(); ++j) CHECK(grid[i].seed != grid[j].seed);
  }
  CHECK(lane1 == 3);
  CHECK_THROWS_AS(generate_grid(base, {{"ego_speed", {}}}), EmptyOptionListError);
  CHECK_THROWS_AS(generate_grid(base, {{"wheel_size", {1.0}}}), InvalidParametersError);
}

TEST_CASE("parameter validation") {
  ScenarioParams p;
  p.ego_lane = 3;
  CHECK_THROWS_AS(p.validate(), InvalidParametersError);
  p = ScenarioParams{};
  p.vehicle_count = 0;
  CHECK_THROWS_AS(p.validate(), InvalidParametersError);
  p = ScenarioParams{};
  p.outlier_rate = 1.5;
  CHECK_THROWS_AS(p.validate(), InvalidParametersError);
  p = ScenarioParams{};
  p.ego_speed = -1.0;
  CHECK_THROWS_AS(p.validate(), InvalidParametersError);
}

TEST_CASE("validate_log rejects teleportation") {
  auto log = simulate(keeping_params(), 50, 0.1);
  log.x[20] += 5.0;
  CHECK_THROWS_AS(validate_log(log), InstanceInvalidError);
}

TEST_CASE("export emits loadable artifacts") {
  std::vector<ScenarioLog> logs;
  auto keep = simulate(keeping_params(), 80, 0.1);
  keep.id = "s0";
  auto change = simulate(changing_params(), 80, 0.1);
  change.id = "s1";
  logs.push_back(keep);
  logs.push_back(change);

  ExportPaths paths{"/tmp/ers_synth_traj.csv", "/tmp/ers_synth_labels.csv",
                    "/tmp/ers_synth_feat.csv"};
  export_dataset(logs, paths);

  auto d = load_dataset(paths.trajectories_csv, {}, 0.1);
  CHECK(d.size() == 2);
  CHECK(d.horizon == 80);
  CHECK(d.channel_schema == std::vector<std::string>{"x", "y", "speed", "heading"});
  auto labels = load_mode_labels(paths.labels_csv, d);
  CHECK(labels == std::vector<std::string>{"lane_keeping", "lane_changing"});

  // Feature file: header plus one row per (log, step).
  std::ifstream feat(paths.features_csv);
  std::string line;
  std::getline(feat, line);
  CHECK(line.find("rel_lead_distance") != std::string::npos);
  std::size_t rows = 0;
  while (std::getline(feat, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 2 * 81);

  for (const auto& p : {paths.trajectories_csv, paths.labels_csv, paths.features_csv}) {
    std::remove(p.c_str());
  }
}
