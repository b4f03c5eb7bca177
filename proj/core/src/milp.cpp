// Textbook route: the big-M linearized MILP, solved by branch-and-bound on
// fractional b over a dense-simplex LP relaxation. Exists as a correctness
// cross-check of the linearization; solve_exact is the performance path.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include "ers/errors.hpp"
#include "ers/solver.hpp"
#include "simplex.hpp"

namespace ers {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundTol = 1e-9;

using Clock = std::chrono::steady_clock;

struct MilpContext {
  const ErsInstance* inst = nullptr;
  std::size_t n = 0, coords = 0;
  std::vector<double> env_min_flat, env_max_flat;  // [t*c] layout matching data rows
  double area_constant = 0.0;                      // sum dt*(env_min - env_max)
  std::uint64_t lp_solves = 0;
  std::uint64_t node_limit = std::numeric_limits<std::uint64_t>::max();
  double time_limit_s = kInf;
  Clock::time_point start;
  bool stopped = false;

  double best_area = kInf;
  std::vector<bool> best_mask;
};

/// Relaxation of the Eq-style linearized system at a node. fixed[i] is
/// 0/1/-1 (undecided). Returns the node lower bound on the area and the
/// fractional b values; infeasible -> +inf bound.
struct NodeLp {
  double bound = kInf;
  bool feasible = false;
  bool solved = false;  // false when the simplex hit its iteration cap
  std::vector<double> b;  // only for undecided indices, by position
};

NodeLp solve_node_lp(MilpContext& ctx, const std::vector<int>& fixed) {
  const std::size_t C = ctx.coords;
  std::vector<std::size_t> undecided;
  std::size_t fixed_ones = 0;
  for (std::size_t i = 0; i < ctx.n; ++i) {
    if (fixed[i] < 0) {
      undecided.push_back(i);
    } else if (fixed[i] == 1) {
      ++fixed_ones;
    }
  }
  NodeLp out;
  if (fixed_ones + undecided.size() < ctx.inst->m) return out;  // infeasible

  const std::size_t nu = undecided.size();
  const std::size_t nvars = 2 * C + nu;  // u_ct, l_ct, b_i
  const auto& data = ctx.inst->data;

  std::vector<std::vector<double>> A;
  std::vector<double> rhs;
  auto add_row = [&](std::vector<double> row, double r) {
    A.push_back(std::move(row));
    rhs.push_back(r);
  };

  // -u_ct + (x_i - xmin)*b_i <= 0 and -l_ct + (xmax - x_i)*b_i <= 0.
  for (std::size_t p = 0; p < nu; ++p) {
    const std::size_t i = undecided[p];
    const double* row_vals = &data.values[i * C];
    for (std::size_t k = 0; k < C; ++k) {
      const double dplus = row_vals[k] - ctx.env_min_flat[k];
      if (dplus > 0.0) {
        std::vector<double> row(nvars, 0.0);
        row[k] = -1.0;
        row[2 * C + p] = dplus;
        add_row(std::move(row), 0.0);
      }
      const double dminus = ctx.env_max_flat[k] - row_vals[k];
      if (dminus > 0.0) {
        std::vector<double> row(nvars, 0.0);
        row[C + k] = -1.0;
        row[2 * C + p] = dminus;
        add_row(std::move(row), 0.0);
      }
    }
  }

  // Aggregated constraints from trajectories fixed to 1: u_ct >= max d+, etc.
  std::vector<double> req_u(C, 0.0), req_l(C, 0.0);
  for (std::size_t i = 0; i < ctx.n; ++i) {
    if (fixed[i] != 1) continue;
    const double* row_vals = &data.values[i * C];
    for (std::size_t k = 0; k < C; ++k) {
      req_u[k] = std::max(req_u[k], row_vals[k] - ctx.env_min_flat[k]);
      req_l[k] = std::max(req_l[k], ctx.env_max_flat[k] - row_vals[k]);
    }
  }
  for (std::size_t k = 0; k < C; ++k) {
    if (req_u[k] > 0.0) {
      std::vector<double> row(nvars, 0.0);
      row[k] = -1.0;
      add_row(std::move(row), -req_u[k]);
    }
    if (req_l[k] > 0.0) {
      std::vector<double> row(nvars, 0.0);
      row[C + k] = -1.0;
      add_row(std::move(row), -req_l[k]);
    }
    // Keep the LP bounded: u, l <= xmax - xmin.
    const double span = ctx.env_max_flat[k] - ctx.env_min_flat[k];
    std::vector<double> ru(nvars, 0.0), rl(nvars, 0.0);
    ru[k] = 1.0;
    rl[C + k] = 1.0;
    add_row(std::move(ru), span);
    add_row(std::move(rl), span);
  }

  // sum b_i >= m - fixed_ones, b_i <= 1.
  if (ctx.inst->m > fixed_ones) {
    std::vector<double> row(nvars, 0.0);
    for (std::size_t p = 0; p < nu; ++p) row[2 * C + p] = -1.0;
    add_row(std::move(row), -static_cast<double>(ctx.inst->m - fixed_ones));
  }
  for (std::size_t p = 0; p < nu; ++p) {
    std::vector<double> row(nvars, 0.0);
    row[2 * C + p] = 1.0;
    add_row(std::move(row), 1.0);
  }

  std::vector<double> c(nvars, 0.0);
  for (std::size_t k = 0; k < C; ++k) {
    c[k] = data.dt;
    c[C + k] = data.dt;
  }

  ++ctx.lp_solves;
  detail::LpResult lp = detail::solve_lp(A, rhs, c);
  if (lp.status == detail::LpStatus::kInfeasible) return out;
  if (lp.status != detail::LpStatus::kOptimal) {
    // Simplex gave up; treat the node as unbounded-below so the search
    // keeps branching instead of mispruning.
    out.feasible = true;
    out.solved = false;
    out.bound = -kInf;
    out.b.assign(nu, 0.5);
    return out;
  }
  out.feasible = true;
  out.solved = true;
  out.bound = lp.objective + ctx.area_constant;
  out.b.resize(nu);
  for (std::size_t p = 0; p < nu; ++p) out.b[p] = lp.x[2 * C + p];
  return out;
}

void record_candidate(MilpContext& ctx, const std::vector<bool>& mask) {
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < ctx.n; ++i) {
    if (mask[i]) sel.push_back(i);
  }
  if (sel.size() < ctx.inst->m) return;
  const double area = selection_area(ctx.inst->data, sel);
  if (area < ctx.best_area ||
      (area == ctx.best_area &&
       std::lexicographical_compare(mask.begin(), mask.end(), ctx.best_mask.begin(),
                                    ctx.best_mask.end()))) {
    ctx.best_area = area;
    ctx.best_mask = mask;
  }
}

bool limits_hit(MilpContext& ctx) {
  if (ctx.lp_solves > ctx.node_limit ||
      std::chrono::duration<double>(Clock::now() - ctx.start).count() > ctx.time_limit_s) {
    ctx.stopped = true;
  }
  return ctx.stopped;
}

/// Pass 1: standard best-area search. Most-fractional branching, include
/// branch first, prune on bound > incumbent + tolerance.
void search_optimum(MilpContext& ctx, std::vector<int>& fixed) {
  if (limits_hit(ctx)) return;
  NodeLp lp = solve_node_lp(ctx, fixed);
  if (!lp.feasible) return;
  if (lp.bound > ctx.best_area + kBoundTol) return;

  std::vector<std::size_t> undecided;
  for (std::size_t i = 0; i < ctx.n; ++i) {
    if (fixed[i] < 0) undecided.push_back(i);
  }

  std::size_t frac_pos = undecided.size();
  double frac_score = kInf;
  for (std::size_t p = 0; p < undecided.size(); ++p) {
    const double dist = std::abs(lp.b[p] - 0.5);
    if (dist < 0.5 - 1e-6 && dist < frac_score) {
      frac_score = dist;
      frac_pos = p;
    }
  }
  if (lp.solved && frac_pos == undecided.size()) {
    // Integral relaxation: its b is optimal for this subtree.
    std::vector<bool> mask(ctx.n, false);
    for (std::size_t i = 0; i < ctx.n; ++i) {
      if (fixed[i] == 1) mask[i] = true;
    }
    for (std::size_t p = 0; p < undecided.size(); ++p) {
      if (lp.b[p] > 0.5) mask[undecided[p]] = true;
    }
    record_candidate(ctx, mask);
    return;
  }
  if (undecided.empty()) {
    std::vector<bool> mask(ctx.n, false);
    for (std::size_t i = 0; i < ctx.n; ++i) mask[i] = fixed[i] == 1;
    record_candidate(ctx, mask);
    return;
  }
  const std::size_t branch =
      frac_pos < undecided.size() ? undecided[frac_pos] : undecided.front();
  fixed[branch] = 1;
  search_optimum(ctx, fixed);
  fixed[branch] = 0;
  search_optimum(ctx, fixed);
  fixed[branch] = -1;
}

/// Pass 2: with the optimum known, walk masks in lexicographic order
/// (b_0 first, 0-branch first) and return the first optimal leaf. This is
/// exactly the lex-smallest-mask tie-break.
bool search_lex_min(MilpContext& ctx, std::vector<int>& fixed, std::size_t depth,
                    std::vector<bool>* out_mask) {
  if (limits_hit(ctx)) return false;
  if (depth == ctx.n) {
    std::vector<std::size_t> sel;
    for (std::size_t i = 0; i < ctx.n; ++i) {
      if (fixed[i] == 1) sel.push_back(i);
    }
    if (sel.size() < ctx.inst->m) return false;
    if (selection_area(ctx.inst->data, sel) > ctx.best_area) return false;
    out_mask->assign(ctx.n, false);
    for (std::size_t i : sel) (*out_mask)[i] = true;
    return true;
  }
  NodeLp lp = solve_node_lp(ctx, fixed);
  if (!lp.feasible || lp.bound > ctx.best_area + kBoundTol) return false;
  for (int value : {0, 1}) {
    fixed[depth] = value;
    if (search_lex_min(ctx, fixed, depth + 1, out_mask)) {
      fixed[depth] = -1;
      return true;
    }
  }
  fixed[depth] = -1;
  return false;
}

}  // namespace

ErsSolution solve_milp_textbook(const ErsInstance& inst, const SolveConfig& cfg) {
  const auto start = Clock::now();
  const std::size_t n = inst.size();
  if (n == 0 || inst.m < 1 || inst.m > n) throw InstanceInvalidError("invalid MILP instance");

  MilpContext ctx;
  ctx.inst = &inst;
  ctx.n = n;
  ctx.coords = inst.data.num_channels * inst.data.num_steps;
  ctx.node_limit = cfg.node_limit;
  ctx.time_limit_s = cfg.time_limit_s;
  ctx.start = start;

  ctx.env_min_flat.resize(ctx.coords);
  ctx.env_max_flat.resize(ctx.coords);
  ctx.area_constant = 0.0;
  for (std::size_t t = 0; t < inst.data.num_steps; ++t) {
    for (std::size_t c = 0; c < inst.data.num_channels; ++c) {
      const std::size_t k = t * inst.data.num_channels + c;
      ctx.env_min_flat[k] = inst.env_min[c][t];
      ctx.env_max_flat[k] = inst.env_max[c][t];
      ctx.area_constant += inst.data.dt * (ctx.env_min_flat[k] - ctx.env_max_flat[k]);
    }
  }

  // Initial incumbent from the greedy peel.
  std::vector<std::size_t> greedy = greedy_peel_selection(inst.data, inst.m);
  ctx.best_mask.assign(n, false);
  for (std::size_t i : greedy) ctx.best_mask[i] = true;
  ctx.best_area = selection_area(inst.data, greedy);

  std::vector<int> fixed(n, -1);
  search_optimum(ctx, fixed);

  // Lexicographic tie-break refinement over equal-area optima.
  std::vector<bool> lex_mask;
  std::fill(fixed.begin(), fixed.end(), -1);
  if (!ctx.stopped && search_lex_min(ctx, fixed, 0, &lex_mask)) {
    ctx.best_mask = lex_mask;
  }

  ErsSolution sol;
  sol.selection = ctx.best_mask;
  std::vector<std::size_t> sel;
  for (std::size_t i = 0; i < n; ++i) {
    if (ctx.best_mask[i]) sel.push_back(i);
  }
  sol.tube = pointwise_bounds(inst.data, sel);
  sol.area = ctx.best_area;
  sol.proven_optimal = !ctx.stopped;
  sol.nodes_explored = ctx.lp_solves;
  sol.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
  return sol;
}

}  // namespace ers
