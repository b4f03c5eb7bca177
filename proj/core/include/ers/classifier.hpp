#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace ers {

/// Environment snapshot the mode decision is made from.
struct EnvObservation {
  std::vector<double> features;
  std::size_t time_index = 0;
};

/// Canonical feature order for the driving pipeline.
inline const std::vector<std::string>& driving_feature_names() {
  static const std::vector<std::string> names = {
      "rel_lead_distance", "rel_lead_speed", "ego_speed", "lateral_offset", "adjacent_gap"};
  return names;
}

enum class ModeLabel { kLaneKeeping, kLaneChanging };

std::string to_string(ModeLabel m);
ModeLabel mode_label_from_string(const std::string& s);

/// Soft-margin linear separator with internal feature standardization.
struct Hyperplane {
  std::vector<double> weights;  // in standardized feature space
  double bias = 0.0;
  double margin = 0.0;  // 2 / ||w||
  std::vector<double> feature_means;
  std::vector<double> feature_scales;

  double score(const EnvObservation& e) const;
};

/// Blinker rule: lane_changing from the first active step through the end
/// of the window, lane_keeping before; length must be T+1.
std::vector<ModeLabel> label_transitions(const std::vector<bool>& blinker, std::size_t horizon);

/// Soft-margin max-margin training (hinge loss, regularization weight
/// 1/penalty) via dual coordinate descent; stops when the maximal KKT
/// violation drops below tol.
Hyperplane train_max_margin(const std::vector<EnvObservation>& examples,
                            const std::vector<ModeLabel>& labels, double penalty = 1.0,
                            double tol = 1e-6, std::size_t max_iters = 10000);

/// Sign of the affine score; exact zero classifies as lane_keeping.
ModeLabel classify(const Hyperplane& h, const EnvObservation& e);

std::string hyperplane_to_json(const Hyperplane& h);
Hyperplane hyperplane_from_json(const std::string& json_text);

}  // namespace ers
