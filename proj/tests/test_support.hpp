#pragma once

#include <cstdint>
#include <vector>

#include "ers/rng.hpp"
#include "ers/trajectory.hpp"

namespace ers::testing {

/// Random dense ChannelDataset, the generator behind the seeded property
/// suites.
inline ChannelDataset random_dataset(std::uint64_t seed, std::size_t n, std::size_t steps,
                                     std::size_t channels, double dt = 1.0) {
  CounterRng rng(seed, 101);
  ChannelDataset d;
  d.dt = dt;
  d.num_trajectories = n;
  d.num_steps = steps;
  d.num_channels = channels;
  d.channel_indices.resize(channels);
  for (std::size_t c = 0; c < channels; ++c) {
    d.channel_indices[c] = c;
    d.channel_names.push_back("c" + std::to_string(c));
  }
  d.values.resize(n * steps * channels);
  for (double& v : d.values) v = 10.0 * (rng.next_uniform01() - 0.5);
  return d;
}

inline ChannelDataset one_channel_dataset(const std::vector<std::vector<double>>& rows,
                                          double dt = 1.0) {
  ChannelDataset d;
  d.dt = dt;
  d.num_trajectories = rows.size();
  d.num_steps = rows.empty() ? 0 : rows.front().size();
  d.num_channels = 1;
  d.channel_names = {"c0"};
  d.channel_indices = {0};
  for (const auto& row : rows) {
    for (double v : row) d.values.push_back(v);
  }
  return d;
}

}  // namespace ers::testing
