#include "ers/tube.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "ers/errors.hpp"

namespace ers {

void Tube::validate() const {
  if (upper.size() != lower.size() || upper.size() != weights.size()) {
    throw DimensionMismatchError("tube channel counts disagree");
  }
  for (std::size_t c = 0; c < upper.size(); ++c) {
    if (upper[c].size() != lower[c].size()) {
      throw DimensionMismatchError("tube step counts disagree on channel " + std::to_string(c));
    }
    if (weights[c] <= 0.0) throw InvalidParametersError("tube weights must be positive");
    for (std::size_t t = 0; t < upper[c].size(); ++t) {
      if (!std::isfinite(upper[c][t]) || !std::isfinite(lower[c][t])) {
        throw NonFiniteError("tube bound is not finite");
      }
      if (upper[c][t] < lower[c][t]) {
        throw InstanceInvalidError("tube upper < lower at channel " + std::to_string(c) +
                                   " step " + std::to_string(t));
      }
    }
  }
}

Tube pointwise_bounds(const ChannelDataset& data, const std::vector<std::size_t>& selection) {
  if (selection.empty()) throw EmptySelectionError("selection is empty");
  Tube t;
  t.dt = data.dt;
  t.weights.assign(data.num_channels, 1.0);
  t.upper.assign(data.num_channels,
                 std::vector<double>(data.num_steps, -std::numeric_limits<double>::infinity()));
  t.lower.assign(data.num_channels,
                 std::vector<double>(data.num_steps, std::numeric_limits<double>::infinity()));
  for (std::size_t i : selection) {
    if (i >= data.num_trajectories) {
      throw IndexOutOfRangeError("trajectory index " + std::to_string(i) + " out of range");
    }
    for (std::size_t step = 0; step < data.num_steps; ++step) {
      for (std::size_t c = 0; c < data.num_channels; ++c) {
        double v = data.value(i, step, c);
        t.upper[c][step] = std::max(t.upper[c][step], v);
        t.lower[c][step] = std::min(t.lower[c][step], v);
      }
    }
  }
  return t;
}

double tube_area(const Tube& t) {
  double area = 0.0;
  for (std::size_t c = 0; c < t.num_channels(); ++c) {
    double channel_sum = 0.0;
    for (std::size_t step = 0; step < t.upper[c].size(); ++step) {
      channel_sum += t.upper[c][step] - t.lower[c][step];
    }
    area += t.weights[c] * channel_sum * t.dt;
  }
  return area;
}

namespace {

void check_dims(const Tube& t, const ChannelDataset& data, std::size_t trajectory) {
  if (t.num_channels() != data.num_channels || t.num_steps() != data.num_steps) {
    throw DimensionMismatchError("tube and dataset dimensions disagree");
  }
  if (trajectory >= data.num_trajectories) {
    throw IndexOutOfRangeError("trajectory index out of range");
  }
}

}  // namespace

bool contains(const Tube& t, const ChannelDataset& data, std::size_t trajectory) {
  check_dims(t, data, trajectory);
  for (std::size_t step = 0; step < data.num_steps; ++step) {
    for (std::size_t c = 0; c < data.num_channels; ++c) {
      double v = data.value(trajectory, step, c);
      if (v > t.upper[c][step] || v < t.lower[c][step]) return false;
    }
  }
  return true;
}

double cumulative_error(const Tube& t, const ChannelDataset& data, std::size_t trajectory) {
  check_dims(t, data, trajectory);
  double err = 0.0;
  for (std::size_t step = 0; step < data.num_steps; ++step) {
    for (std::size_t c = 0; c < data.num_channels; ++c) {
      double v = data.value(trajectory, step, c);
      err += std::max(0.0, v - t.upper[c][step]);
      err += std::max(0.0, t.lower[c][step] - v);
    }
  }
  return err;
}

double empirical_probability(const Tube& t, const ChannelDataset& data) {
  if (data.num_trajectories == 0) throw EmptyDatasetError("no trajectories");
  std::size_t inside = 0;
  for (std::size_t i = 0; i < data.num_trajectories; ++i) {
    if (contains(t, data, i)) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(data.num_trajectories);
}

std::string tube_to_json(const Tube& t, const std::vector<std::string>& channel_names) {
  nlohmann::json j;
  j["channels"] = channel_names.empty()
                      ? std::vector<std::string>(t.num_channels(), "")
                      : channel_names;
  j["dt"] = t.dt;
  j["weights"] = t.weights;
  j["upper"] = t.upper;
  j["lower"] = t.lower;
  return j.dump(2);
}

Tube tube_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  Tube t;
  t.dt = j.at("dt").get<double>();
  t.weights = j.at("weights").get<std::vector<double>>();
  t.upper = j.at("upper").get<std::vector<std::vector<double>>>();
  t.lower = j.at("lower").get<std::vector<std::vector<double>>>();
  t.validate();
  return t;
}

void write_tube_csv(const Tube& t, const std::string& path) {
  std::ofstream out(path);
  out << "t";
  for (std::size_t c = 0; c < t.num_channels(); ++c) {
    out << ",lower" << c << ",upper" << c;
  }
  out << '\n';
  out.precision(17);
  for (std::size_t step = 0; step < t.num_steps(); ++step) {
    out << step;
    for (std::size_t c = 0; c < t.num_channels(); ++c) {
      out << ',' << t.lower[c][step] << ',' << t.upper[c][step];
    }
    out << '\n';
  }
}

}  // namespace ers
