#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "ers/trajectory.hpp"
#include "ers/tube.hpp"

namespace ers {

/// Solver-ready minimum-area coverage problem: keep at least m = ceil(alpha*N)
/// trajectories, minimize the area of their pointwise-bounds tube. The
/// envelopes are the dataset-wide pointwise extremes used by the big-M
/// linearization.
struct ErsInstance {
  ChannelDataset data;
  double alpha = 1.0;
  std::size_t m = 0;
  std::vector<std::vector<double>> env_max;  // [c][t], pointwise maximum
  std::vector<std::vector<double>> env_min;  // [c][t], pointwise minimum

  std::size_t size() const { return data.num_trajectories; }
};

struct SolveConfig {
  double time_limit_s = std::numeric_limits<double>::infinity();
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  unsigned workers = 1;
  std::string tie_break = "lex_smallest_mask";  // the only rule implemented
  // When false, the search stops at the first optimal-area selection instead
  // of enumerating every tie for the lexicographic rule. Much faster on data
  // with duplicated trajectories; the reported selection then depends on the
  // (deterministic) search order rather than on the tie-break rule.
  bool refine_ties = true;
};

struct ErsSolution {
  std::vector<bool> selection;  // b_i
  Tube tube;
  double area = 0.0;
  bool proven_optimal = false;
  std::uint64_t nodes_explored = 0;
  double wall_time_s = 0.0;

  std::size_t selected_count() const;
  std::vector<std::size_t> selected_indices() const;
};

/// One grid point of an alpha sweep.
struct SweepEntry {
  double alpha = 1.0;
  std::size_t pool_size = 0;  // candidate pool the solve ran over
  ErsSolution solution;
};

struct SweepResult {
  std::vector<SweepEntry> entries;  // alphas strictly decreasing
  bool accelerated = false;
  std::string mode;  // optional mode identifier for partitioned runs
};

ErsInstance build_instance(const ChannelDataset& data, double alpha);

/// Exact depth-first branch-and-bound over trajectory inclusion/exclusion.
/// Deterministic for a fixed config; ties broken by lexicographically
/// smallest selection mask. If a node or time limit is hit the best
/// incumbent is returned with proven_optimal = false.
ErsSolution solve_exact(const ErsInstance& inst, const SolveConfig& cfg = {});

/// Literal big-M MILP, solved by branch-and-bound on fractional b over a
/// dense-simplex linear relaxation. Cross-check of the linearization; not
/// the performance path.
ErsSolution solve_milp_textbook(const ErsInstance& inst, const SolveConfig& cfg = {});

/// Leave-k-out oracle: enumerate every size-m subset. Guarded at 1e7
/// combinations.
ErsSolution solve_naive(const ErsInstance& inst);

/// Solve a strictly decreasing alpha grid. When accelerated, each grid
/// point's candidate pool is the previous point's selected trajectories
/// (a heuristic: per-alpha area >= the exact optimum).
SweepResult sweep(const ChannelDataset& data, const std::vector<double>& alphas,
                  const SolveConfig& cfg = {}, bool accelerated = false);

std::string solution_to_json(const ErsSolution& s, double alpha, std::size_t m);

/// Area of the pointwise-bounds tube over `selection`. All solver paths and
/// oracles use this one accumulation order, so tie comparisons are exact.
double selection_area(const ChannelDataset& data, const std::vector<std::size_t>& selection);

/// Greedy peel heuristic: drop the trajectory whose removal most reduces the
/// area, N - m times. Feasible, not optimal; used as the initial incumbent.
std::vector<std::size_t> greedy_peel_selection(const ChannelDataset& data, std::size_t m);

/// Number of size-k subsets, saturating at the guard threshold.
double binomial_guard(std::size_t n, std::size_t k);

}  // namespace ers
