#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ers {

/// One observed trajectory: T+1 state samples of dimension n.
struct Trajectory {
  std::string id;
  std::vector<std::vector<double>> samples;  // [t][channel]
  std::optional<std::string> mode_label;

  std::size_t steps() const { return samples.size(); }
  std::size_t dim() const { return samples.empty() ? 0 : samples.front().size(); }
};

/// N time-aligned trajectories over a shared horizon.
struct TrajectoryDataset {
  std::vector<Trajectory> trajectories;
  std::size_t horizon = 0;  // T; every trajectory has T+1 samples
  double dt = 1.0;
  std::vector<std::string> channel_schema;
  std::vector<double> origin;  // reference initial state x_0

  std::size_t size() const { return trajectories.size(); }
  std::size_t dim() const { return channel_schema.size(); }

  /// Enforces the type invariants; throws on violation.
  void validate() const;
};

/// A dataset projected onto a subset of channels, stored densely.
struct ChannelDataset {
  std::vector<std::string> channel_names;
  std::vector<std::size_t> channel_indices;  // into the parent schema
  double dt = 1.0;
  std::size_t num_trajectories = 0;
  std::size_t num_steps = 0;  // T+1
  std::size_t num_channels = 0;
  std::vector<double> values;  // [i * num_steps * num_channels + t * num_channels + c]

  double value(std::size_t i, std::size_t t, std::size_t c) const {
    return values[(i * num_steps + t) * num_channels + c];
  }
  double& value(std::size_t i, std::size_t t, std::size_t c) {
    return values[(i * num_steps + t) * num_channels + c];
  }
};

/// Parse the trajectory CSV format: header `id,t,<channel>...`, `#` comments.
/// If `schema` is nonempty the file's channel columns must match it.
TrajectoryDataset load_dataset(const std::string& path,
                               const std::vector<std::string>& schema = {},
                               double dt = 1.0);

/// Inverse of load_dataset; writes the same CSV format.
void save_dataset(const TrajectoryDataset& d, const std::string& path);

/// Translate each trajectory so its first sample is zero in the position
/// channels (all channels when `position_channels` is empty).
TrajectoryDataset center_dataset(const TrajectoryDataset& d,
                                 const std::vector<std::size_t>& position_channels = {});

ChannelDataset project_channels(const TrajectoryDataset& d,
                                const std::vector<std::size_t>& channels);

std::map<std::string, TrajectoryDataset> partition_by_mode(
    const TrajectoryDataset& d, const std::vector<std::string>& labels);

/// Mode labels file: CSV `id,mode`. Returns labels in dataset order.
std::vector<std::string> load_mode_labels(const std::string& path,
                                          const TrajectoryDataset& d);

}  // namespace ers
