#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ers/trajectory.hpp"

namespace ers {

/// Interval tube over a horizon: per-channel upper/lower bound sequences.
/// The represented set is the product of closed intervals
/// [lower[c][t], upper[c][t]] at each step.
struct Tube {
  std::vector<std::vector<double>> upper;  // [c][t]
  std::vector<std::vector<double>> lower;  // [c][t]
  double dt = 1.0;
  std::vector<double> weights;  // per-channel, positive

  std::size_t num_channels() const { return upper.size(); }
  std::size_t num_steps() const { return upper.empty() ? 0 : upper.front().size(); }

  void validate() const;
};

/// Pointwise max/min over the selected trajectory indices.
Tube pointwise_bounds(const ChannelDataset& data, const std::vector<std::size_t>& selection);

/// Weighted Riemann-sum measure: sum_c w_c * sum_t (upper - lower) * dt.
double tube_area(const Tube& t);

/// Closed-set membership of one trajectory (values indexed [t][c] flattened
/// the same way as ChannelDataset rows).
bool contains(const Tube& t, const ChannelDataset& data, std::size_t trajectory);

/// Summed excursion outside the tube; zero iff contains() is true.
double cumulative_error(const Tube& t, const ChannelDataset& data, std::size_t trajectory);

/// Fraction of trajectories contained in the tube.
double empirical_probability(const Tube& t, const ChannelDataset& data);

std::string tube_to_json(const Tube& t, const std::vector<std::string>& channel_names = {});
Tube tube_from_json(const std::string& json_text);

void write_tube_csv(const Tube& t, const std::string& path);

}  // namespace ers
