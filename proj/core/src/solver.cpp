#include "ers/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "ers/errors.hpp"

namespace ers {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCombinationGuard = 1e7;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// Area of the pointwise-bounds tube of a selection, accumulated in the same
/// order as tube_area so results are bit-identical across solver paths.
class AreaEvaluator {
 public:
  explicit AreaEvaluator(const ChannelDataset& data)
      : data_(data),
        coords_(data.num_channels * data.num_steps),
        lo_(coords_),
        hi_(coords_) {}

  double operator()(const std::vector<std::size_t>& selection) {
    std::fill(lo_.begin(), lo_.end(), kInf);
    std::fill(hi_.begin(), hi_.end(), -kInf);
    for (std::size_t i : selection) {
      const double* row = &data_.values[i * coords_];
      for (std::size_t k = 0; k < coords_; ++k) {
        hi_[k] = std::max(hi_[k], row[k]);
        lo_[k] = std::min(lo_[k], row[k]);
      }
    }
    // Row layout is [t][c]; tube_area sums per channel, then steps.
    double area = 0.0;
    for (std::size_t c = 0; c < data_.num_channels; ++c) {
      double channel_sum = 0.0;
      for (std::size_t t = 0; t < data_.num_steps; ++t) {
        std::size_t k = t * data_.num_channels + c;
        channel_sum += hi_[k] - lo_[k];
      }
      area += channel_sum * data_.dt;
    }
    return area;
  }

 private:
  const ChannelDataset& data_;
  std::size_t coords_;
  std::vector<double> lo_, hi_;
};

bool mask_less(const std::vector<bool>& a, const std::vector<bool>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Candidate {
  double area = kInf;
  std::vector<bool> mask;

  bool improves_on(const Candidate& other) const {
    if (area != other.area) return area < other.area;
    return !other.mask.empty() && (mask.empty() ? false : mask_less(mask, other.mask));
  }
};

void validate_instance(const ErsInstance& inst) {
  const std::size_t n = inst.size();
  if (n == 0) throw InstanceInvalidError("instance has no trajectories");
  if (inst.m < 1 || inst.m > n) {
    throw InstanceInvalidError("required inclusion count m=" + std::to_string(inst.m) +
                               " outside [1, N]");
  }
  if (inst.env_max.size() != inst.data.num_channels ||
      inst.env_min.size() != inst.data.num_channels) {
    throw InstanceInvalidError("envelope shape does not match the data");
  }
}

/// Greedy peel: repeatedly drop the trajectory whose removal most reduces
/// the area, pool -> m survivors. Provides the initial incumbent.
std::vector<std::size_t> greedy_peel(const ChannelDataset& data, std::size_t m) {
  const std::size_t n = data.num_trajectories;
  const std::size_t coords = data.num_channels * data.num_steps;
  std::vector<std::size_t> selected(n);
  std::iota(selected.begin(), selected.end(), 0);

  std::vector<double> hi1(coords), hi2(coords), lo1(coords), lo2(coords);
  std::vector<std::size_t> hi_arg(coords), lo_arg(coords);

  while (selected.size() > m) {
    std::fill(hi1.begin(), hi1.end(), -kInf);
    std::fill(hi2.begin(), hi2.end(), -kInf);
    std::fill(lo1.begin(), lo1.end(), kInf);
    std::fill(lo2.begin(), lo2.end(), kInf);
    for (std::size_t i : selected) {
      const double* row = &data.values[i * coords];
      for (std::size_t k = 0; k < coords; ++k) {
        double v = row[k];
        if (v > hi1[k]) {
          hi2[k] = hi1[k];
          hi1[k] = v;
          hi_arg[k] = i;
        } else if (v > hi2[k]) {
          hi2[k] = v;
        }
        if (v < lo1[k]) {
          lo2[k] = lo1[k];
          lo1[k] = v;
          lo_arg[k] = i;
        } else if (v < lo2[k]) {
          lo2[k] = v;
        }
      }
    }
    std::size_t best_i = selected.front();
    double best_drop = -1.0;
    for (std::size_t i : selected) {
      const double* row = &data.values[i * coords];
      double drop = 0.0;
      for (std::size_t k = 0; k < coords; ++k) {
        if (hi_arg[k] == i && row[k] == hi1[k]) drop += hi1[k] - hi2[k];
        if (lo_arg[k] == i && row[k] == lo1[k]) drop += lo2[k] - lo1[k];
      }
      if (drop > best_drop) {
        best_drop = drop;
        best_i = i;
      }
    }
    selected.erase(std::find(selected.begin(), selected.end(), best_i));
  }
  return selected;
}

/// Deterministic first-improvement swap polish of a selection. A tight
/// initial incumbent collapses the near-optimal middle of the search, which
/// matters most on low-dimensional instances with many rejections. The eval
/// budget keeps the polish negligible on large instances.
void polish_selection(const ChannelDataset& data, AreaEvaluator& eval,
                      std::vector<std::size_t>& sel, double& area) {
  const std::size_t n = data.num_trajectories;
  const std::size_t coords = data.num_channels * data.num_steps;
  std::vector<bool> in(n, false);
  for (std::size_t i : sel) in[i] = true;
  const std::uint64_t per_eval = std::max<std::uint64_t>(1, sel.size() * coords);
  std::uint64_t budget = 50'000'000 / per_eval;

  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    for (std::size_t a = 0; a < sel.size() && !improved && budget > 0; ++a) {
      const std::size_t removed = sel[a];
      for (std::size_t j = 0; j < n && budget > 0; ++j) {
        if (in[j]) continue;
        sel[a] = j;
        --budget;
        const double cand = eval(sel);
        if (cand < area) {
          area = cand;
          in[removed] = false;
          in[j] = true;
          improved = true;
          break;
        }
        sel[a] = removed;
      }
    }
  }
  std::sort(sel.begin(), sel.end());
}

/// Shared state of one exact solve.
struct SearchShared {
  const ChannelDataset* data = nullptr;
  std::size_t n = 0, coords = 0, m = 0;
  std::vector<double> vals_by_coord;            // [ct * n + i]
  std::vector<std::vector<std::size_t>> order;  // per coord, indices ascending by value
  std::vector<double> median;                   // per coord, branching reference

  std::atomic<double> incumbent_area{kInf};
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> stopped{false};

  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  double time_limit_s = kInf;
  bool refine_ties = true;
  Clock::time_point start;

  double coord_value(std::size_t ct, std::size_t i) const { return vals_by_coord[ct * n + i]; }
};

void init_shared(SearchShared& sh, const ChannelDataset& data, std::size_t m) {
  sh.data = &data;
  sh.n = data.num_trajectories;
  sh.coords = data.num_channels * data.num_steps;
  sh.m = m;
  sh.vals_by_coord.resize(sh.coords * sh.n);
  for (std::size_t i = 0; i < sh.n; ++i) {
    for (std::size_t k = 0; k < sh.coords; ++k) {
      sh.vals_by_coord[k * sh.n + i] = data.values[i * sh.coords + k];
    }
  }
  sh.order.resize(sh.coords);
  sh.median.resize(sh.coords);
  for (std::size_t k = 0; k < sh.coords; ++k) {
    auto& ord = sh.order[k];
    ord.resize(sh.n);
    std::iota(ord.begin(), ord.end(), 0);
    const double* v = &sh.vals_by_coord[k * sh.n];
    std::stable_sort(ord.begin(), ord.end(),
                     [v](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    sh.median[k] = v[ord[sh.n / 2]];
  }
}

enum Status : std::uint8_t { kUndecided = 0, kIn = 1, kOut = 2 };

/// One DFS worker over a subproblem. Pruning is strict (bound > incumbent),
/// so the set of optimal leaves visited is schedule independent; the final
/// reduction applies the lexicographic tie-break deterministically.
class DfsWorker {
 public:
  explicit DfsWorker(SearchShared& sh) : sh_(sh), scratch_(sh.n), eval_(*sh.data) {}

  Candidate best;

  void run(std::vector<std::uint8_t> status, std::vector<double> lo, std::vector<double> hi,
           std::size_t in_count, std::size_t ex_count) {
    status_ = std::move(status);
    dfs(lo, hi, in_count, ex_count);
  }

  void dfs(std::vector<double>& lo, std::vector<double>& hi, std::size_t in_count,
           std::size_t ex_count) {
    if (sh_.stopped.load(std::memory_order_relaxed)) return;
    const std::size_t r = sh_.m - in_count;
    if (r == 0) {
      record_leaf();
      return;
    }
    const std::size_t undecided = sh_.n - in_count - ex_count;
    if (undecided < r) return;

    std::uint64_t node = sh_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
    if (node > sh_.node_limit) {
      sh_.stopped.store(true, std::memory_order_relaxed);
      return;
    }
    if ((node & 1023) == 0 && seconds_since(sh_.start) > sh_.time_limit_s) {
      sh_.stopped.store(true, std::memory_order_relaxed);
      return;
    }

    if (undecided == r) {
      // Forced: include everything that remains.
      std::vector<std::size_t> flipped;
      for (std::size_t i = 0; i < sh_.n; ++i) {
        if (status_[i] == kUndecided) {
          status_[i] = kIn;
          flipped.push_back(i);
        }
      }
      record_leaf();
      for (std::size_t i : flipped) status_[i] = kUndecided;
      return;
    }

    double inc = sh_.incumbent_area.load(std::memory_order_relaxed);
    const double bound = completion_bound(lo, hi, r, inc);
    if (bound > inc) return;
    if (!sh_.refine_ties && bound >= inc) return;

    const std::size_t branch = pick_branch(lo, hi, in_count);

    // Include branch first: forces early pruning of outlier-heavy branches.
    {
      std::vector<double> nlo(lo), nhi(hi);
      const double* row = &sh_.data->values[branch * sh_.coords];
      for (std::size_t k = 0; k < sh_.coords; ++k) {
        nlo[k] = std::min(nlo[k], row[k]);
        nhi[k] = std::max(nhi[k], row[k]);
      }
      status_[branch] = kIn;
      dfs(nlo, nhi, in_count + 1, ex_count);
    }
    status_[branch] = kOut;
    dfs(lo, hi, in_count, ex_count + 1);
    status_[branch] = kUndecided;
  }

 private:
  /// Admissible lower bound: per coordinate, the tightest interval covering
  /// the forced-in bounds plus r undecided values, ignoring cross-coordinate
  /// coupling. Bails out early once the accumulated bound exceeds `cutoff`.
  double completion_bound(const std::vector<double>& lo, const std::vector<double>& hi,
                          std::size_t r, double cutoff) {
    double bound = 0.0;
    for (std::size_t ct = 0; ct < sh_.coords; ++ct) {
      const double* v = &sh_.vals_by_coord[ct * sh_.n];
      std::size_t count = 0;
      for (std::size_t idx : sh_.order[ct]) {
        if (status_[idx] == kUndecided) scratch_[count++] = v[idx];
      }
      double best = kInf;
      for (std::size_t j = 0; j + r <= count; ++j) {
        double w = std::max(hi[ct], scratch_[j + r - 1]) - std::min(lo[ct], scratch_[j]);
        best = std::min(best, w);
      }
      bound += best * sh_.data->dt;
      if (bound > cutoff) return bound;
    }
    return bound;
  }

  /// Undecided trajectory with the largest marginal area increase over the
  /// forced-in tube (pointwise medians stand in while nothing is forced yet).
  std::size_t pick_branch(const std::vector<double>& lo, const std::vector<double>& hi,
                          std::size_t in_count) {
    std::size_t best_i = sh_.n;
    double best_score = -1.0;
    for (std::size_t i = 0; i < sh_.n; ++i) {
      if (status_[i] != kUndecided) continue;
      const double* row = &sh_.data->values[i * sh_.coords];
      double score = 0.0;
      for (std::size_t k = 0; k < sh_.coords; ++k) {
        double l = in_count > 0 ? lo[k] : sh_.median[k];
        double h = in_count > 0 ? hi[k] : sh_.median[k];
        if (row[k] > h) score += row[k] - h;
        if (row[k] < l) score += l - row[k];
      }
      if (score > best_score) {
        best_score = score;
        best_i = i;
      }
    }
    return best_i;
  }

  void record_leaf() {
    std::vector<std::size_t> sel;
    sel.reserve(sh_.m);
    std::vector<bool> mask(sh_.n, false);
    for (std::size_t i = 0; i < sh_.n; ++i) {
      if (status_[i] == kIn) {
        sel.push_back(i);
        mask[i] = true;
      }
    }
    Candidate cand{eval_(sel), std::move(mask)};
    if (cand.improves_on(best)) best = std::move(cand);
    // Share the area for pruning; masks are merged deterministically later.
    double cur = sh_.incumbent_area.load(std::memory_order_relaxed);
    while (best.area < cur &&
           !sh_.incumbent_area.compare_exchange_weak(cur, best.area, std::memory_order_relaxed)) {
    }
  }

  SearchShared& sh_;
  std::vector<std::uint8_t> status_;
  std::vector<double> scratch_;
  AreaEvaluator eval_;
};

struct RootTask {
  std::vector<std::uint8_t> status;
  std::vector<double> lo, hi;
  std::size_t in_count = 0, ex_count = 0;
};

/// Expand the first few branching decisions breadth-first so workers get
/// independent subtrees. Uses the same branching rule as the DFS.
std::vector<RootTask> split_root(SearchShared& sh, std::size_t min_tasks) {
  std::vector<RootTask> frontier;
  frontier.push_back(RootTask{std::vector<std::uint8_t>(sh.n, kUndecided),
                              std::vector<double>(sh.coords, kInf),
                              std::vector<double>(sh.coords, -kInf), 0, 0});
  while (frontier.size() < min_tasks) {
    std::vector<RootTask> next;
    bool expanded = false;
    for (auto& task : frontier) {
      const std::size_t undecided = sh.n - task.in_count - task.ex_count;
      const std::size_t r = sh.m - task.in_count;
      if (r == 0 || undecided <= r) {
        next.push_back(std::move(task));
        continue;
      }
      std::size_t branch = sh.n;
      {
        double best_score = -1.0;
        for (std::size_t i = 0; i < sh.n; ++i) {
          if (task.status[i] != kUndecided) continue;
          const double* row = &sh.data->values[i * sh.coords];
          double score = 0.0;
          for (std::size_t k = 0; k < sh.coords; ++k) {
            double l = task.in_count > 0 ? task.lo[k] : sh.median[k];
            double h = task.in_count > 0 ? task.hi[k] : sh.median[k];
            if (row[k] > h) score += row[k] - h;
            if (row[k] < l) score += l - row[k];
          }
          if (score > best_score) {
            best_score = score;
            branch = i;
          }
        }
      }
      RootTask inc = task;
      inc.status[branch] = kIn;
      const double* row = &sh.data->values[branch * sh.coords];
      for (std::size_t k = 0; k < sh.coords; ++k) {
        inc.lo[k] = std::min(inc.lo[k], row[k]);
        inc.hi[k] = std::max(inc.hi[k], row[k]);
      }
      ++inc.in_count;
      RootTask exc = std::move(task);
      exc.status[branch] = kOut;
      ++exc.ex_count;
      next.push_back(std::move(inc));
      next.push_back(std::move(exc));
      expanded = true;
    }
    frontier = std::move(next);
    if (!expanded) break;
  }
  return frontier;
}

}  // namespace

double selection_area(const ChannelDataset& data, const std::vector<std::size_t>& selection) {
  AreaEvaluator eval(data);
  return eval(selection);
}

std::vector<std::size_t> greedy_peel_selection(const ChannelDataset& data, std::size_t m) {
  return greedy_peel(data, m);
}

std::size_t ErsSolution::selected_count() const {
  return static_cast<std::size_t>(std::count(selection.begin(), selection.end(), true));
}

std::vector<std::size_t> ErsSolution::selected_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < selection.size(); ++i) {
    if (selection[i]) out.push_back(i);
  }
  return out;
}

ErsInstance build_instance(const ChannelDataset& data, double alpha) {
  if (data.num_trajectories == 0) throw EmptyDatasetError("cannot build instance from empty data");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw AlphaOutOfRangeError("alpha=" + std::to_string(alpha) + " outside (0, 1]");
  }
  ErsInstance inst;
  inst.data = data;
  inst.alpha = alpha;
  inst.m = static_cast<std::size_t>(
      std::ceil(alpha * static_cast<double>(data.num_trajectories) - 1e-12));
  inst.m = std::max<std::size_t>(1, std::min(inst.m, data.num_trajectories));
  std::vector<std::size_t> all(data.num_trajectories);
  std::iota(all.begin(), all.end(), 0);
  Tube env = pointwise_bounds(data, all);
  inst.env_max = env.upper;
  inst.env_min = env.lower;
  return inst;
}

ErsSolution solve_exact(const ErsInstance& inst, const SolveConfig& cfg) {
  validate_instance(inst);
  if (cfg.node_limit == 0) throw NoIncumbentError("node limit of zero precludes any search");
  const auto start = Clock::now();
  const std::size_t n = inst.size();
  const std::size_t m = inst.m;

  ErsSolution sol;
  if (m == n) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    sol.selection.assign(n, true);
    sol.tube = pointwise_bounds(inst.data, all);
    sol.area = tube_area(sol.tube);
    sol.proven_optimal = true;
    sol.wall_time_s = seconds_since(start);
    return sol;
  }

  SearchShared sh;
  init_shared(sh, inst.data, m);
  sh.node_limit = cfg.node_limit;
  sh.time_limit_s = cfg.time_limit_s;
  sh.refine_ties = cfg.refine_ties;
  sh.start = start;

  // Initial incumbent.
  AreaEvaluator eval(inst.data);
  std::vector<std::size_t> greedy = greedy_peel(inst.data, m);
  double greedy_area = eval(greedy);
  polish_selection(inst.data, eval, greedy, greedy_area);

  // Per-coordinate sliding-window optima make additional incumbent
  // candidates; on single-coordinate instances the best window already is
  // the exact optimum, which reduces the search to tie enumeration.
  for (std::size_t ct = 0; ct < sh.coords; ++ct) {
    const double* v = &sh.vals_by_coord[ct * sh.n];
    const auto& ord = sh.order[ct];
    std::size_t best_j = 0;
    double best_w = kInf;
    for (std::size_t j = 0; j + m <= n; ++j) {
      const double w = v[ord[j + m - 1]] - v[ord[j]];
      if (w < best_w) {
        best_w = w;
        best_j = j;
      }
    }
    std::vector<std::size_t> window(ord.begin() + static_cast<std::ptrdiff_t>(best_j),
                                    ord.begin() + static_cast<std::ptrdiff_t>(best_j + m));
    std::sort(window.begin(), window.end());
    const double window_area = eval(window);
    if (window_area < greedy_area) {
      greedy_area = window_area;
      greedy = std::move(window);
    }
  }

  Candidate incumbent;
  incumbent.mask.assign(n, false);
  for (std::size_t i : greedy) incumbent.mask[i] = true;
  incumbent.area = greedy_area;
  sh.incumbent_area.store(incumbent.area);

  // Limits make node accounting order-dependent, so limited runs are
  // single-threaded to stay reproducible.
  const bool limited = cfg.node_limit != std::numeric_limits<std::uint64_t>::max() ||
                       std::isfinite(cfg.time_limit_s);
  unsigned workers = limited ? 1 : std::max(1u, cfg.workers);

  std::vector<Candidate> results;
  if (workers == 1) {
    DfsWorker worker(sh);
    worker.run(std::vector<std::uint8_t>(n, kUndecided), std::vector<double>(sh.coords, kInf),
               std::vector<double>(sh.coords, -kInf), 0, 0);
    results.push_back(std::move(worker.best));
  } else {
    std::vector<RootTask> tasks = split_root(sh, 8 * workers);
    std::vector<Candidate> task_best(tasks.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          std::size_t t = next.fetch_add(1);
          if (t >= tasks.size()) break;
          DfsWorker worker(sh);
          worker.run(tasks[t].status, tasks[t].lo, tasks[t].hi, tasks[t].in_count,
                     tasks[t].ex_count);
          task_best[t] = std::move(worker.best);
        }
      });
    }
    for (auto& th : pool) th.join();
    results = std::move(task_best);
  }

  Candidate best = std::move(incumbent);
  for (auto& cand : results) {
    if (!cand.mask.empty() && cand.improves_on(best)) best = std::move(cand);
  }

  sol.selection = best.mask;
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < n; ++i) {
    if (best.mask[i]) sel.push_back(i);
  }
  sol.tube = pointwise_bounds(inst.data, sel);
  sol.area = best.area;
  sol.proven_optimal = !sh.stopped.load();
  sol.nodes_explored = std::min<std::uint64_t>(sh.nodes.load(), cfg.node_limit);
  sol.wall_time_s = seconds_since(start);
  return sol;
}

double binomial_guard(std::size_t n, std::size_t k) {
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::size_t j = 1; j <= k; ++j) {
    c *= static_cast<double>(n - k + j) / static_cast<double>(j);
    if (c > 10.0 * kCombinationGuard) return c;
  }
  return c;
}

ErsSolution solve_naive(const ErsInstance& inst) {
  validate_instance(inst);
  const auto start = Clock::now();
  const std::size_t n = inst.size();
  const std::size_t m = inst.m;
  if (binomial_guard(n, n - m) > kCombinationGuard) {
    throw CombinatorialBlowupError("C(" + std::to_string(n) + "," + std::to_string(n - m) +
                                   ") exceeds the 1e7 enumeration guard");
  }

  AreaEvaluator eval(inst.data);
  std::vector<std::size_t> combo(m);
  std::iota(combo.begin(), combo.end(), 0);
  Candidate best;
  std::uint64_t count = 0;
  for (;;) {
    ++count;
    double area = eval(combo);
    Candidate cand;
    cand.area = area;
    if (area < best.area || area == best.area) {
      cand.mask.assign(n, false);
      for (std::size_t i : combo) cand.mask[i] = true;
      if (cand.improves_on(best)) best = std::move(cand);
    }
    // Advance to the next size-m combination in index order.
    std::size_t pos = m;
    while (pos > 0 && combo[pos - 1] == n - m + pos - 1) --pos;
    if (pos == 0) break;
    ++combo[pos - 1];
    for (std::size_t j = pos; j < m; ++j) combo[j] = combo[j - 1] + 1;
  }

  ErsSolution sol;
  sol.selection = best.mask;
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < n; ++i) {
    if (best.mask[i]) sel.push_back(i);
  }
  sol.tube = pointwise_bounds(inst.data, sel);
  sol.area = best.area;
  sol.proven_optimal = true;
  sol.nodes_explored = count;
  sol.wall_time_s = seconds_since(start);
  return sol;
}

SweepResult sweep(const ChannelDataset& data, const std::vector<double>& alphas,
                  const SolveConfig& cfg, bool accelerated) {
  if (alphas.empty()) throw AlphaOutOfRangeError("empty alpha grid");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i] > 0.0 && alphas[i] <= 1.0)) {
      throw AlphaOutOfRangeError("grid alpha outside (0, 1]");
    }
    if (i > 0 && alphas[i] >= alphas[i - 1]) {
      throw AlphaOutOfRangeError("alpha grid must be strictly decreasing");
    }
  }
  const std::size_t n = data.num_trajectories;
  SweepResult result;
  result.accelerated = accelerated;

  std::vector<std::size_t> pool(n);
  std::iota(pool.begin(), pool.end(), 0);

  for (double alpha : alphas) {
    std::size_t m = static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n) - 1e-12));
    m = std::max<std::size_t>(1, std::min(m, n));

    SweepEntry entry;
    entry.alpha = alpha;
    entry.pool_size = accelerated ? pool.size() : n;

    if (accelerated) {
      // Restrict candidates to the previous (larger-alpha) selection.
      ChannelDataset sub;
      sub.channel_names = data.channel_names;
      sub.channel_indices = data.channel_indices;
      sub.dt = data.dt;
      sub.num_trajectories = pool.size();
      sub.num_steps = data.num_steps;
      sub.num_channels = data.num_channels;
      const std::size_t coords = data.num_steps * data.num_channels;
      sub.values.resize(pool.size() * coords);
      for (std::size_t p = 0; p < pool.size(); ++p) {
        std::copy_n(&data.values[pool[p] * coords], coords, &sub.values[p * coords]);
      }
      ErsInstance inst = build_instance(sub, alpha);
      inst.m = std::min(m, pool.size());
      ErsSolution sub_sol = solve_exact(inst, cfg);
      // Map the restricted mask back to full-dataset indices.
      entry.solution = sub_sol;
      entry.solution.selection.assign(n, false);
      std::vector<std::size_t> new_pool;
      for (std::size_t p = 0; p < pool.size(); ++p) {
        if (sub_sol.selection[p]) {
          entry.solution.selection[pool[p]] = true;
          new_pool.push_back(pool[p]);
        }
      }
      pool = std::move(new_pool);
    } else {
      ErsInstance inst = build_instance(data, alpha);
      inst.m = m;
      entry.solution = solve_exact(inst, cfg);
    }
    result.entries.push_back(std::move(entry));
  }
  return result;
}

std::string solution_to_json(const ErsSolution& s, double alpha, std::size_t m) {
  nlohmann::json j;
  j["alpha"] = alpha;
  j["m"] = m;
  j["selection"] = s.selection;
  j["area"] = s.area;
  j["proven_optimal"] = s.proven_optimal;
  j["nodes_explored"] = s.nodes_explored;
  j["wall_time_s"] = s.wall_time_s;
  j["tube"] = nlohmann::json::parse(tube_to_json(s.tube));
  return j.dump(2);
}

}  // namespace ers
