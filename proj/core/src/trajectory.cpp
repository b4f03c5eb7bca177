#include "ers/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "ers/errors.hpp"

namespace ers {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_double(const std::string& s, const std::string& context) {
  try {
    std::size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw NonFiniteError("cannot parse numeric field '" + s + "' (" + context + ")");
  }
}

}  // namespace

void TrajectoryDataset::validate() const {
  if (trajectories.empty()) throw EmptyDatasetError("dataset has no trajectories");
  const std::size_t n = dim();
  for (const auto& traj : trajectories) {
    if (traj.steps() != horizon + 1) {
      throw RaggedHorizonError("trajectory '" + traj.id + "' has " +
                               std::to_string(traj.steps()) + " samples, expected " +
                               std::to_string(horizon + 1));
    }
    for (const auto& sample : traj.samples) {
      if (sample.size() != n) {
        throw DimensionMismatchError("trajectory '" + traj.id + "' sample dimension " +
                                     std::to_string(sample.size()) + " != " +
                                     std::to_string(n));
      }
      for (double v : sample) {
        if (!std::isfinite(v)) {
          throw NonFiniteError("trajectory '" + traj.id + "' contains a non-finite value");
        }
      }
    }
  }
}

TrajectoryDataset load_dataset(const std::string& path,
                               const std::vector<std::string>& schema, double dt) {
  std::ifstream in(path);
  if (!in) throw EmptyFileError("cannot open '" + path + "'");

  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) throw EmptyFileError("'" + path + "' has no header row");
  if (header.size() < 3 || header[0] != "id" || header[1] != "t") {
    throw MissingColumnError("'" + path + "' header must start with id,t");
  }
  std::vector<std::string> channels(header.begin() + 2, header.end());
  if (!schema.empty() && channels != schema) {
    throw MissingColumnError("'" + path + "' channel columns do not match the requested schema");
  }

  // Rows per id must be contiguous and ordered t = 0..T.
  struct Block {
    std::vector<std::vector<double>> samples;
  };
  std::vector<std::string> id_order;
  std::unordered_map<std::string, Block> blocks;
  std::string current_id;

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw MissingColumnError("'" + path + "' line " + std::to_string(line_no) +
                               " has " + std::to_string(fields.size()) + " fields, expected " +
                               std::to_string(header.size()));
    }
    const std::string& id = fields[0];
    auto [it, inserted] = blocks.try_emplace(id);
    if (inserted) {
      id_order.push_back(id);
    } else if (id != current_id) {
      throw RaggedHorizonError("rows for id '" + id + "' are not contiguous in '" + path + "'");
    }
    current_id = id;

    long t = std::lround(parse_double(fields[1], "t column"));
    if (t != static_cast<long>(it->second.samples.size())) {
      throw RaggedHorizonError("id '" + id + "' time index " + std::to_string(t) +
                               " out of order at line " + std::to_string(line_no));
    }
    std::vector<double> sample(channels.size());
    for (std::size_t c = 0; c < channels.size(); ++c) {
      double v = parse_double(fields[2 + c], "line " + std::to_string(line_no));
      if (!std::isfinite(v)) {
        throw NonFiniteError("non-finite coordinate at line " + std::to_string(line_no) +
                             " of '" + path + "'");
      }
      sample[c] = v;
    }
    it->second.samples.push_back(std::move(sample));
  }
  if (id_order.empty()) throw EmptyFileError("'" + path + "' has no data rows");

  TrajectoryDataset d;
  d.channel_schema = channels;
  d.dt = dt;
  const std::size_t steps = blocks[id_order.front()].samples.size();
  for (const auto& id : id_order) {
    auto& block = blocks[id];
    if (block.samples.size() != steps) {
      throw RaggedHorizonError("id '" + id + "' has " + std::to_string(block.samples.size()) +
                               " rows, expected " + std::to_string(steps));
    }
    Trajectory traj;
    traj.id = id;
    traj.samples = std::move(block.samples);
    d.trajectories.push_back(std::move(traj));
  }
  d.horizon = steps - 1;
  d.origin = d.trajectories.front().samples.front();
  d.validate();
  return d;
}

void save_dataset(const TrajectoryDataset& d, const std::string& path) {
  std::ofstream out(path);
  out << "id,t";
  for (const auto& name : d.channel_schema) out << ',' << name;
  out << '\n';
  out.precision(17);
  for (const auto& traj : d.trajectories) {
    for (std::size_t t = 0; t < traj.samples.size(); ++t) {
      out << traj.id << ',' << t;
      for (double v : traj.samples[t]) out << ',' << v;
      out << '\n';
    }
  }
}

TrajectoryDataset center_dataset(const TrajectoryDataset& d,
                                 const std::vector<std::size_t>& position_channels) {
  std::vector<std::size_t> chans = position_channels;
  if (chans.empty()) {
    chans.resize(d.dim());
    for (std::size_t c = 0; c < chans.size(); ++c) chans[c] = c;
  }
  TrajectoryDataset out = d;
  for (auto& traj : out.trajectories) {
    if (traj.samples.empty()) continue;
    const std::vector<double> offset = traj.samples.front();
    for (auto& sample : traj.samples) {
      for (std::size_t c : chans) sample[c] -= offset[c];
    }
  }
  out.origin.assign(d.dim(), 0.0);
  for (std::size_t c = 0; c < d.dim(); ++c) {
    if (std::find(chans.begin(), chans.end(), c) == chans.end()) {
      out.origin[c] = d.origin.size() > c ? d.origin[c] : 0.0;
    }
  }
  return out;
}

ChannelDataset project_channels(const TrajectoryDataset& d,
                                const std::vector<std::size_t>& channels) {
  if (channels.empty()) throw IndexOutOfRangeError("channel selection is empty");
  for (std::size_t k = 0; k < channels.size(); ++k) {
    if (channels[k] >= d.dim()) {
      throw IndexOutOfRangeError("channel index " + std::to_string(channels[k]) +
                                 " out of range for dimension " + std::to_string(d.dim()));
    }
    for (std::size_t j = k + 1; j < channels.size(); ++j) {
      if (channels[j] == channels[k]) {
        throw DuplicateChannelError("channel index " + std::to_string(channels[k]) +
                                    " selected twice");
      }
    }
  }
  ChannelDataset out;
  out.channel_indices = channels;
  out.dt = d.dt;
  out.num_trajectories = d.size();
  out.num_steps = d.horizon + 1;
  out.num_channels = channels.size();
  for (std::size_t c : channels) out.channel_names.push_back(d.channel_schema[c]);
  out.values.resize(out.num_trajectories * out.num_steps * out.num_channels);
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t t = 0; t < out.num_steps; ++t) {
      for (std::size_t c = 0; c < channels.size(); ++c) {
        out.value(i, t, c) = d.trajectories[i].samples[t][channels[c]];
      }
    }
  }
  return out;
}

std::map<std::string, TrajectoryDataset> partition_by_mode(
    const TrajectoryDataset& d, const std::vector<std::string>& labels) {
  if (labels.size() != d.size()) {
    throw LabelCountMismatchError(std::to_string(labels.size()) + " labels for " +
                                  std::to_string(d.size()) + " trajectories");
  }
  std::map<std::string, TrajectoryDataset> out;
  for (std::size_t i = 0; i < d.size(); ++i) {
    auto [it, inserted] = out.try_emplace(labels[i]);
    if (inserted) {
      it->second.horizon = d.horizon;
      it->second.dt = d.dt;
      it->second.channel_schema = d.channel_schema;
      it->second.origin = d.origin;
    }
    Trajectory traj = d.trajectories[i];
    traj.mode_label = labels[i];
    it->second.trajectories.push_back(std::move(traj));
  }
  return out;
}

std::vector<std::string> load_mode_labels(const std::string& path,
                                          const TrajectoryDataset& d) {
  std::ifstream in(path);
  if (!in) throw EmptyFileError("cannot open '" + path + "'");
  std::unordered_map<std::string, std::string> by_id;
  std::string line;
  bool saw_header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_csv_line(line);
    if (!saw_header) {
      saw_header = true;
      if (fields.size() < 2 || fields[0] != "id" || fields[1] != "mode") {
        throw MissingColumnError("'" + path + "' header must be id,mode");
      }
      continue;
    }
    if (fields.size() < 2) {
      throw MissingColumnError("label row with fewer than 2 fields in '" + path + "'");
    }
    by_id[fields[0]] = fields[1];
  }
  std::vector<std::string> labels;
  labels.reserve(d.size());
  for (const auto& traj : d.trajectories) {
    auto it = by_id.find(traj.id);
    if (it == by_id.end()) {
      throw LabelCountMismatchError("no mode label for id '" + traj.id + "'");
    }
    labels.push_back(it->second);
  }
  return labels;
}

}  // namespace ers
