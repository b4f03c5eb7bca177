// Command-line front end for the reachable-tube toolkit.
//
// Subcommands:
//   fit       solve one minimum-area coverage instance
//   sweep     solve a decreasing alpha grid (optionally accelerated)
//   bench     runtime comparison table: branch-and-bound vs subset enumeration
//   distcheck area-reduction curves on samples from a known distribution
//   simulate  synthesize labeled two-lane driving scenarios
//   classify  train or apply the lane-change separator on a feature CSV
//   metrics   accuracy/precision trade-off report on a validation set
//
// Exit codes: 0 success, 2 invalid input, 3 resource limit hit before
// optimality was proven, 4 internal error. Failures print a one-line JSON
// object {"error": {"kind", "message"}} on stderr.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ers/classifier.hpp"
#include "ers/distributions.hpp"
#include "ers/errors.hpp"
#include "ers/metrics.hpp"
#include "ers/rng.hpp"
#include "ers/solver.hpp"
#include "ers/synth.hpp"
#include "ers/trajectory.hpp"
#include "ers/tube.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitLimit = 3;
constexpr int kExitInternal = 4;

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::json j;
  j["error"]["kind"] = kind;
  j["error"]["message"] = message;
  std::cerr << j.dump() << '\n';
}

unsigned resolve_workers(unsigned cli_value) {
  if (const char* env = std::getenv("ERS_WORKERS")) {
    long v = std::strtol(env, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  return cli_value;
}

std::vector<std::size_t> parse_channel_list(const std::string& text,
                                            const std::vector<std::string>& schema) {
  std::vector<std::size_t> out;
  if (text.empty()) {
    for (std::size_t c = 0; c < schema.size(); ++c) out.push_back(c);
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto it = std::find(schema.begin(), schema.end(), item);
    if (it == schema.end()) {
      throw ers::MissingColumnError("unknown channel '" + item + "'");
    }
    out.push_back(static_cast<std::size_t>(it - schema.begin()));
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(path);
  out << text << '\n';
}

// --- fit -------------------------------------------------------------------

struct FitOptions {
  std::string input;
  std::string output = "-";
  std::string tube_csv;
  std::string method = "exact";
  std::string channels;
  double alpha = 0.9;
  double dt = 1.0;
  double time_limit = std::numeric_limits<double>::infinity();
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  unsigned workers = 1;
  bool center = false;
  bool report_time = false;
};

int run_fit(const FitOptions& opt) {
  auto dataset = ers::load_dataset(opt.input, {}, opt.dt);
  if (opt.center) dataset = ers::center_dataset(dataset);
  auto channels = parse_channel_list(opt.channels, dataset.channel_schema);
  auto data = ers::project_channels(dataset, channels);
  auto inst = ers::build_instance(data, opt.alpha);

  ers::SolveConfig cfg;
  cfg.time_limit_s = opt.time_limit;
  cfg.node_limit = opt.node_limit;
  cfg.workers = resolve_workers(opt.workers);

  ers::ErsSolution sol;
  if (opt.method == "exact") {
    sol = ers::solve_exact(inst, cfg);
  } else if (opt.method == "naive") {
    sol = ers::solve_naive(inst);
  } else if (opt.method == "milp") {
    sol = ers::solve_milp_textbook(inst, cfg);
  } else {
    throw ers::InvalidParametersError("unknown method '" + opt.method + "'");
  }

  // Timing and the node count are suppressed unless asked for, so repeated
  // runs are byte-identical even across worker counts.
  if (!opt.report_time) {
    sol.wall_time_s = 0.0;
    sol.nodes_explored = 0;
  }
  write_text(opt.output, ers::solution_to_json(sol, opt.alpha, inst.m));
  if (!opt.tube_csv.empty()) ers::write_tube_csv(sol.tube, opt.tube_csv);
  return sol.proven_optimal ? kExitOk : kExitLimit;
}

// --- sweep -----------------------------------------------------------------

struct SweepOptions {
  std::string input;
  std::string output = "-";
  std::string labels;
  std::string channels;
  std::vector<double> alphas;
  double dt = 1.0;
  double time_limit = std::numeric_limits<double>::infinity();
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  unsigned workers = 1;
  bool accelerated = false;
  bool center = false;
};

nlohmann::json sweep_to_json(const ers::SweepResult& sw) {
  nlohmann::json j;
  j["accelerated"] = sw.accelerated;
  if (!sw.mode.empty()) j["mode"] = sw.mode;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : sw.entries) {
    nlohmann::json je;
    je["alpha"] = e.alpha;
    je["pool_size"] = e.pool_size;
    je["area"] = e.solution.area;
    je["proven_optimal"] = e.solution.proven_optimal;
    je["selection"] = e.solution.selection;
    j["entries"].push_back(std::move(je));
  }
  return j;
}

int run_sweep(const SweepOptions& opt) {
  auto dataset = ers::load_dataset(opt.input, {}, opt.dt);
  if (opt.center) dataset = ers::center_dataset(dataset);

  ers::SolveConfig cfg;
  cfg.time_limit_s = opt.time_limit;
  cfg.node_limit = opt.node_limit;
  cfg.workers = resolve_workers(opt.workers);

  bool all_optimal = true;
  nlohmann::json out;
  if (opt.labels.empty()) {
    auto channels = parse_channel_list(opt.channels, dataset.channel_schema);
    auto data = ers::project_channels(dataset, channels);
    auto sw = ers::sweep(data, opt.alphas, cfg, opt.accelerated);
    for (const auto& e : sw.entries) all_optimal = all_optimal && e.solution.proven_optimal;
    out = sweep_to_json(sw);
  } else {
    auto labels = ers::load_mode_labels(opt.labels, dataset);
    auto parts = ers::partition_by_mode(dataset, labels);
    out["modes"] = nlohmann::json::object();
    for (const auto& [mode, part] : parts) {
      auto channels = parse_channel_list(opt.channels, part.channel_schema);
      auto data = ers::project_channels(part, channels);
      auto sw = ers::sweep(data, opt.alphas, cfg, opt.accelerated);
      sw.mode = mode;
      for (const auto& e : sw.entries) all_optimal = all_optimal && e.solution.proven_optimal;
      out["modes"][mode] = sweep_to_json(sw);
    }
  }
  write_text(opt.output, out.dump(2));
  return all_optimal ? kExitOk : kExitLimit;
}

// --- bench -----------------------------------------------------------------

struct BenchOptions {
  std::string output = "-";
  std::vector<std::size_t> sizes = {100, 200, 300, 400, 500};
  std::vector<std::size_t> rejects = {2, 4, 6, 8, 10};
  std::size_t horizon = 100;
  double per_cell_limit = 60.0;
  std::uint64_t seed = 2024;
  unsigned workers = 1;
};

/// Benchmark family: each trajectory is a shared smooth curve scaled by a
/// per-trajectory amplitude, plus small jitter. Extreme amplitudes dominate
/// the bounds, so the instances are realistic yet have informative bounds.
ers::ChannelDataset bench_dataset(std::size_t n, std::size_t horizon, std::uint64_t seed) {
  ers::CounterRng rng(seed, 7);
  ers::ChannelDataset d;
  d.dt = 0.1;
  d.num_trajectories = n;
  d.num_steps = horizon + 1;
  d.num_channels = 2;
  d.channel_names = {"x", "y"};
  d.channel_indices = {0, 1};
  d.values.resize(n * d.num_steps * 2);
  for (std::size_t i = 0; i < n; ++i) {
    const double amp = 1.0 + 0.5 * ers::standard_normal_quantile(rng.next_uniform01());
    for (std::size_t t = 0; t <= horizon; ++t) {
      const double s = 0.1 * static_cast<double>(t);
      const double jx = 0.02 * (rng.next_uniform01() - 0.5);
      const double jy = 0.02 * (rng.next_uniform01() - 0.5);
      d.value(i, t, 0) = amp * s + jx;
      d.value(i, t, 1) = amp * std::sin(0.5 * s) + jy;
    }
  }
  return d;
}

int run_bench(const BenchOptions& opt) {
  std::ostringstream table;
  table << "n,k,exact_seconds,naive_seconds\n";
  table.precision(3);
  table << std::fixed;
  for (std::size_t ki = 0; ki < opt.rejects.size(); ++ki) {
    const std::size_t k = opt.rejects[ki];
    for (std::size_t n : opt.sizes) {
      if (k >= n) continue;
      auto data = bench_dataset(n, opt.horizon, opt.seed + n + 1000 * k);
      const double alpha = static_cast<double>(n - k) / static_cast<double>(n);
      auto inst = ers::build_instance(data, alpha);

      ers::SolveConfig cfg;
      cfg.workers = resolve_workers(opt.workers);
      cfg.time_limit_s = opt.per_cell_limit;
      auto t0 = std::chrono::steady_clock::now();
      auto sol = ers::solve_exact(inst, cfg);
      double exact_s =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

      std::string naive_cell = "---";
      if (ers::binomial_guard(n, n - k) < 1e7) {
        auto t1 = std::chrono::steady_clock::now();
        try {
          ers::solve_naive(inst);
          double naive_s =
              std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
          std::ostringstream cell;
          cell.precision(3);
          cell << std::fixed << naive_s;
          naive_cell = cell.str();
        } catch (const ers::CombinatorialBlowupError&) {
          naive_cell = "---";
        }
      }
      table << n << ',' << k << ',' << exact_s << (sol.proven_optimal ? "" : "*") << ','
            << naive_cell << '\n';
    }
  }
  write_text(opt.output, table.str());
  return kExitOk;
}

// --- distcheck -------------------------------------------------------------

struct DistOptions {
  std::string dist = "normal";
  double a = 0.0;
  double b = 1.0;
  std::size_t samples = 100;
  std::size_t horizon = 0;
  std::size_t trials = 10;
  std::vector<double> alphas;
  std::uint64_t seed = 1;
  double dt = 1.0;
  std::string output = "-";
  double slope_fraction = 0.25;
};

int run_distcheck(const DistOptions& opt) {
  ers::DistributionSpec spec;
  spec.kind = ers::distribution_kind_from_string(opt.dist);
  spec.a = opt.a;
  spec.b = opt.b;
  spec.sample_count = opt.samples;
  spec.validate();

  std::vector<double> alphas = opt.alphas;
  if (alphas.empty()) {
    for (int i = 0; i <= 8; ++i) alphas.push_back(1.0 - 0.05 * i);
  }

  std::vector<ers::SweepResult> trials;
  for (std::size_t t = 0; t < opt.trials; ++t) {
    spec.seed = opt.seed + t;
    auto data = ers::sample_dataset(spec, opt.horizon, opt.dt);
    trials.push_back(ers::sweep(data, alphas));
  }
  auto curve = ers::area_reduction_curve(trials);

  if (opt.output == "-") {
    std::ostringstream tmp;
    tmp << "rejection_ratio,mean_dA,min_dA,max_dA\n";
    tmp.precision(17);
    for (std::size_t i = 0; i < curve.rejection_ratios.size(); ++i) {
      tmp << curve.rejection_ratios[i] << ',' << curve.mean_delta_area[i] << ','
          << curve.min_delta_area[i] << ',' << curve.max_delta_area[i] << '\n';
    }
    std::cout << tmp.str();
  } else {
    ers::write_curve_csv(curve, opt.output);
  }

  auto knee = ers::detect_typical_set(curve, opt.slope_fraction);
  nlohmann::json j;
  j["distribution"] = opt.dist;
  j["trials"] = curve.trials;
  j["typical_set_detected"] = knee.has_value();
  if (knee) j["typical_set_rejection_ratio"] = *knee;
  std::cout << j.dump() << '\n';
  return kExitOk;
}

// --- simulate --------------------------------------------------------------

struct SimulateOptions {
  std::string out_prefix = "driving";
  std::size_t horizon = 150;
  double dt = 0.1;
  std::uint64_t seed = 1;
  std::size_t count = 0;  // 0: just the grid, otherwise repeat to this count
  double outlier_rate = 0.0;
};

int run_simulate(const SimulateOptions& opt) {
  ers::ScenarioParams base;
  base.seed = opt.seed;
  base.outlier_rate = opt.outlier_rate;
  std::map<std::string, std::vector<double>> variations = {
      {"ego_speed", {15.0, 17.5, 20.0}},
      {"ego_lane", {0, 1}},
      {"vehicle_count", {1, 2}},
      {"lead_final_speed", {8.0, 12.0, 18.0}},
  };
  auto grid = ers::generate_grid(base, variations);

  std::vector<ers::ScenarioParams> params;
  if (opt.count == 0) {
    params = grid;
  } else {
    for (std::size_t i = 0; i < opt.count; ++i) {
      auto p = grid[i % grid.size()];
      p.seed = base.seed + 1 + i;
      params.push_back(p);
    }
  }

  std::vector<ers::ScenarioLog> logs;
  logs.reserve(params.size());
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto log = ers::simulate(params[i], opt.horizon, opt.dt);
    log.id = "s" + std::to_string(i);
    ers::validate_log(log);
    logs.push_back(std::move(log));
  }

  ers::ExportPaths paths{opt.out_prefix + "_trajectories.csv", opt.out_prefix + "_labels.csv",
                         opt.out_prefix + "_features.csv"};
  ers::export_dataset(logs, paths);

  std::size_t changing = 0, outliers = 0;
  for (const auto& log : logs) {
    if (ers::trajectory_mode(log) == ers::ModeLabel::kLaneChanging) ++changing;
    if (log.outlier) ++outliers;
  }
  nlohmann::json j;
  j["scenarios"] = logs.size();
  j["lane_changing"] = changing;
  j["outliers"] = outliers;
  j["trajectories_csv"] = paths.trajectories_csv;
  j["labels_csv"] = paths.labels_csv;
  j["features_csv"] = paths.features_csv;
  std::cout << j.dump() << '\n';
  return kExitOk;
}

// --- classify --------------------------------------------------------------

struct FeatureTable {
  std::vector<ers::EnvObservation> observations;
  std::vector<ers::ModeLabel> labels;
  bool has_labels = false;
};

FeatureTable load_feature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ers::EmptyFileError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw ers::EmptyFileError("'" + path + "' is empty");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string col;
    while (std::getline(ss, col, ',')) header.push_back(col);
  }
  const auto& names = ers::driving_feature_names();
  std::vector<std::size_t> feature_cols;
  for (const auto& name : names) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ers::MissingColumnError("missing feature column '" + name + "'");
    feature_cols.push_back(static_cast<std::size_t>(it - header.begin()));
  }
  auto label_it = std::find(header.begin(), header.end(), "label");
  auto t_it = std::find(header.begin(), header.end(), "t");

  FeatureTable table;
  table.has_labels = label_it != header.end();
  std::size_t label_col = table.has_labels
                              ? static_cast<std::size_t>(label_it - header.begin())
                              : 0;
  std::size_t t_col = t_it != header.end() ? static_cast<std::size_t>(t_it - header.begin())
                                           : header.size();
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < header.size()) {
      throw ers::MissingColumnError("short row in '" + path + "'");
    }
    ers::EnvObservation obs;
    for (std::size_t c : feature_cols) obs.features.push_back(std::stod(cells[c]));
    if (t_col < cells.size()) obs.time_index = static_cast<std::size_t>(std::stoul(cells[t_col]));
    table.observations.push_back(std::move(obs));
    if (table.has_labels) {
      table.labels.push_back(ers::mode_label_from_string(cells[label_col]));
    }
  }
  if (table.observations.empty()) throw ers::EmptyFileError("'" + path + "' has no data rows");
  return table;
}

struct ClassifyOptions {
  std::string features;
  std::string model;
  std::string output = "-";
  std::string mode = "train";  // train | predict
  double penalty = 1.0;
  double tol = 3e-3;
  std::size_t max_iters = 20000;
};

int run_classify(const ClassifyOptions& opt) {
  auto table = load_feature_csv(opt.features);
  if (opt.mode == "train") {
    if (!table.has_labels) throw ers::MissingColumnError("training needs a 'label' column");
    auto h = ers::train_max_margin(table.observations, table.labels, opt.penalty, opt.tol,
                                   opt.max_iters);
    write_text(opt.model.empty() ? opt.output : opt.model, ers::hyperplane_to_json(h));

    std::size_t correct = 0;
    for (std::size_t i = 0; i < table.observations.size(); ++i) {
      if (ers::classify(h, table.observations[i]) == table.labels[i]) ++correct;
    }
    nlohmann::json j;
    j["examples"] = table.observations.size();
    j["training_accuracy"] =
        static_cast<double>(correct) / static_cast<double>(table.observations.size());
    j["margin"] = h.margin;
    std::cerr << j.dump() << '\n';
    return kExitOk;
  }
  if (opt.mode != "predict") {
    throw ers::InvalidParametersError("mode must be train or predict");
  }
  if (opt.model.empty()) throw ers::InvalidParametersError("predict needs --model");
  std::ifstream mf(opt.model);
  if (!mf) throw ers::EmptyFileError("cannot open '" + opt.model + "'");
  std::stringstream buf;
  buf << mf.rdbuf();
  auto h = ers::hyperplane_from_json(buf.str());

  std::ostringstream out;
  out << "row,prediction,score\n";
  out.precision(12);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < table.observations.size(); ++i) {
    auto pred = ers::classify(h, table.observations[i]);
    out << i << ',' << ers::to_string(pred) << ',' << h.score(table.observations[i]) << '\n';
    if (table.has_labels && pred == table.labels[i]) ++correct;
  }
  write_text(opt.output, out.str());
  if (table.has_labels) {
    nlohmann::json j;
    j["examples"] = table.observations.size();
    j["accuracy"] =
        static_cast<double>(correct) / static_cast<double>(table.observations.size());
    std::cerr << j.dump() << '\n';
  }
  return kExitOk;
}

// --- metrics ---------------------------------------------------------------

struct MetricsOptions {
  std::string validation;
  std::string labels;
  std::string train;
  std::string train_labels;
  std::string channels = "x,y";
  std::vector<double> alphas;
  std::string output = "-";
  double dt = 1.0;
  std::size_t speed_channel = 2;  // index into the schema, defaults to 'speed'
  bool accelerated = false;
  unsigned workers = 1;
};

int run_metrics(const MetricsOptions& opt) {
  auto train = ers::load_dataset(opt.train, {}, opt.dt);
  auto train_labels = ers::load_mode_labels(opt.train_labels, train);
  auto validation = ers::load_dataset(opt.validation, {}, opt.dt);
  auto theta = ers::load_mode_labels(opt.labels, validation);

  std::vector<double> alphas = opt.alphas;
  if (alphas.empty()) alphas = {1.0, 0.95, 0.9, 0.85, 0.8};

  ers::SolveConfig cfg;
  cfg.workers = resolve_workers(opt.workers);

  // Per-mode sweeps on the centered position channels of the training set.
  auto train_centered = ers::center_dataset(train);
  auto parts = ers::partition_by_mode(train_centered, train_labels);
  std::map<std::string, ers::SweepResult> sweeps;
  for (const auto& [mode, part] : parts) {
    auto channels = parse_channel_list(opt.channels, part.channel_schema);
    auto data = ers::project_channels(part, channels);
    auto sw = ers::sweep(data, alphas, cfg, opt.accelerated);
    sw.mode = mode;
    sweeps.emplace(mode, std::move(sw));
  }

  // Validation speeds: mean of the designated channel per trajectory.
  std::vector<double> speeds;
  for (const auto& traj : validation.trajectories) {
    double total = 0.0;
    for (const auto& row : traj.samples) {
      if (opt.speed_channel >= row.size()) {
        throw ers::IndexOutOfRangeError("speed channel out of range");
      }
      total += row[opt.speed_channel];
    }
    speeds.push_back(total / static_cast<double>(traj.samples.size()));
  }

  auto validation_centered = ers::center_dataset(validation);
  auto channels = parse_channel_list(opt.channels, validation_centered.channel_schema);
  auto vdata = ers::project_channels(validation_centered, channels);

  auto report = ers::tradeoff_curve(vdata, sweeps, theta, speeds);
  if (opt.output == "-") {
    std::ostringstream tmp;
    tmp << "mode,alpha,accuracy,precision,cumulative_error,baseline_accuracy\n";
    tmp.precision(12);
    for (const auto& row : report.rows) {
      tmp << row.mode << ',' << row.alpha << ',' << row.accuracy << ',' << row.precision << ','
          << row.mean_cumulative_error << ',' << row.baseline_accuracy << '\n';
    }
    std::cout << tmp.str();
  } else {
    ers::write_report_csv(report, opt.output);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Empirical reachable-tube toolkit"};
  app.require_subcommand(1);

  FitOptions fit;
  auto* cmd_fit = app.add_subcommand("fit", "Solve one minimum-area coverage instance");
  cmd_fit->add_option("--input", fit.input, "Trajectory CSV")->required();
  cmd_fit->add_option("--alpha", fit.alpha, "Coverage fraction in (0, 1]");
  cmd_fit->add_option("--method", fit.method, "exact | naive | milp");
  cmd_fit->add_option("--output", fit.output, "Solution JSON path or -");
  cmd_fit->add_option("--tube-csv", fit.tube_csv, "Also write the tube as CSV");
  cmd_fit->add_option("--channels", fit.channels, "Comma-separated channel names");
  cmd_fit->add_option("--dt", fit.dt, "Sample period");
  cmd_fit->add_option("--time-limit", fit.time_limit, "Seconds");
  cmd_fit->add_option("--node-limit", fit.node_limit, "Search nodes");
  cmd_fit->add_option("--workers", fit.workers, "Worker threads");
  cmd_fit->add_flag("--center", fit.center, "Translate starts to the origin");
  cmd_fit->add_flag("--report-time", fit.report_time, "Include wall time in the output");

  SweepOptions sw;
  auto* cmd_sweep = app.add_subcommand("sweep", "Solve a decreasing alpha grid");
  cmd_sweep->add_option("--input", sw.input, "Trajectory CSV")->required();
  cmd_sweep->add_option("--alphas", sw.alphas, "Strictly decreasing grid")->required();
  cmd_sweep->add_option("--labels", sw.labels, "Optional per-trajectory mode CSV");
  cmd_sweep->add_option("--output", sw.output, "JSON path or -");
  cmd_sweep->add_option("--channels", sw.channels, "Comma-separated channel names");
  cmd_sweep->add_option("--dt", sw.dt, "Sample period");
  cmd_sweep->add_option("--time-limit", sw.time_limit, "Seconds per grid point");
  cmd_sweep->add_option("--node-limit", sw.node_limit, "Nodes per grid point");
  cmd_sweep->add_option("--workers", sw.workers, "Worker threads");
  cmd_sweep->add_flag("--accelerated", sw.accelerated, "Restrict each pool to the previous selection");
  cmd_sweep->add_flag("--center", sw.center, "Translate starts to the origin");

  BenchOptions bench;
  auto* cmd_bench = app.add_subcommand("bench", "Runtime table: exact search vs enumeration");
  cmd_bench->add_option("--sizes", bench.sizes, "Trajectory counts");
  cmd_bench->add_option("--rejects", bench.rejects, "Rejected counts k");
  cmd_bench->add_option("--horizon", bench.horizon, "Steps per trajectory");
  cmd_bench->add_option("--cell-limit", bench.per_cell_limit, "Per-cell time limit (s)");
  cmd_bench->add_option("--seed", bench.seed, "Dataset seed");
  cmd_bench->add_option("--workers", bench.workers, "Worker threads");
  cmd_bench->add_option("--output", bench.output, "CSV path or -");

  DistOptions dist;
  auto* cmd_dist = app.add_subcommand("distcheck", "Area-reduction curve for a known distribution");
  cmd_dist->add_option("--dist", dist.dist, "uniform | normal | lognormal | extreme_value");
  cmd_dist->add_option("--a", dist.a, "First parameter");
  cmd_dist->add_option("--b", dist.b, "Second parameter");
  cmd_dist->add_option("--samples", dist.samples, "Trajectories per trial");
  cmd_dist->add_option("--horizon", dist.horizon, "Steps beyond the first sample");
  cmd_dist->add_option("--trials", dist.trials, "Independent trials");
  cmd_dist->add_option("--alphas", dist.alphas, "Decreasing grid starting at 1");
  cmd_dist->add_option("--seed", dist.seed, "Base seed");
  cmd_dist->add_option("--slope-fraction", dist.slope_fraction, "Plateau sensitivity");
  cmd_dist->add_option("--output", dist.output, "Curve CSV path or -");

  SimulateOptions sim;
  auto* cmd_sim = app.add_subcommand("simulate", "Synthesize labeled driving scenarios");
  cmd_sim->add_option("--out-prefix", sim.out_prefix, "Prefix for the three CSV artifacts");
  cmd_sim->add_option("--horizon", sim.horizon, "Steps per scenario");
  cmd_sim->add_option("--dt", sim.dt, "Sample period");
  cmd_sim->add_option("--seed", sim.seed, "Base seed");
  cmd_sim->add_option("--count", sim.count, "Scenario count (0: one per grid point)");
  cmd_sim->add_option("--outlier-rate", sim.outlier_rate, "Probability of an outlier scenario");

  ClassifyOptions cls;
  auto* cmd_cls = app.add_subcommand("classify", "Train or apply the lane-change separator");
  cmd_cls->add_option("--features", cls.features, "Feature CSV")->required();
  cmd_cls->add_option("--mode", cls.mode, "train | predict");
  cmd_cls->add_option("--model", cls.model, "Separator JSON path");
  cmd_cls->add_option("--output", cls.output, "Predictions path or -");
  cmd_cls->add_option("--penalty", cls.penalty, "Soft-margin penalty");
  cmd_cls->add_option("--tol", cls.tol, "KKT violation stopping tolerance");
  cmd_cls->add_option("--max-iters", cls.max_iters, "Training pass limit");

  MetricsOptions met;
  auto* cmd_met = app.add_subcommand("metrics", "Accuracy/precision trade-off report");
  cmd_met->add_option("--train", met.train, "Training trajectory CSV")->required();
  cmd_met->add_option("--train-labels", met.train_labels, "Training mode CSV")->required();
  cmd_met->add_option("--validation", met.validation, "Validation trajectory CSV")->required();
  cmd_met->add_option("--labels", met.labels, "Validation mode CSV")->required();
  cmd_met->add_option("--alphas", met.alphas, "Decreasing grid");
  cmd_met->add_option("--channels", met.channels, "Position channels for the tubes");
  cmd_met->add_option("--dt", met.dt, "Sample period");
  cmd_met->add_option("--speed-channel", met.speed_channel, "Schema index of the speed channel");
  cmd_met->add_option("--workers", met.workers, "Worker threads");
  cmd_met->add_flag("--accelerated", met.accelerated, "Accelerated sweeps");
  cmd_met->add_option("--output", met.output, "Report CSV path or -");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (app.exit(e) == 0) return kExitOk;
    print_error("usage", e.what());
    return kExitInput;
  }

  try {
    if (*cmd_fit) return run_fit(fit);
    if (*cmd_sweep) return run_sweep(sw);
    if (*cmd_bench) return run_bench(bench);
    if (*cmd_dist) return run_distcheck(dist);
    if (*cmd_sim) return run_simulate(sim);
    if (*cmd_cls) return run_classify(cls);
    if (*cmd_met) return run_metrics(met);
  } catch (const ers::Error& e) {
    print_error(e.kind(), e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    print_error("internal", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
