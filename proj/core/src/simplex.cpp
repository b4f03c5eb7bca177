#include "simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ers::detail {

namespace {

constexpr double kEps = 1e-9;

struct Tableau {
  std::size_t rows, cols;  // cols excludes the RHS column
  std::vector<double> t;   // (rows+1) x (cols+1); last row = objective
  std::vector<std::size_t> basis;

  double& at(std::size_t r, std::size_t c) { return t[r * (cols + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t[r * (cols + 1) + c]; }
  double& rhs(std::size_t r) { return t[r * (cols + 1) + cols]; }
  double& obj(std::size_t c) { return t[rows * (cols + 1) + c]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double piv = at(pr, pc);
    for (std::size_t c = 0; c <= cols; ++c) at(pr, c) /= piv;
    for (std::size_t r = 0; r <= rows; ++r) {
      if (r == pr) continue;
      const double factor = at(r, pc);
      if (factor == 0.0) continue;
      for (std::size_t c = 0; c <= cols; ++c) at(r, c) -= factor * at(pr, c);
    }
    basis[pr] = pc;
  }

  /// Returns false on iteration exhaustion, true when the objective row has
  /// no negative reduced cost left. `allowed[c]` masks enterable columns.
  bool optimize(const std::vector<char>& allowed, std::size_t max_iters, bool* unbounded) {
    *unbounded = false;
    for (std::size_t iter = 0; iter < max_iters; ++iter) {
      const bool bland = iter > max_iters / 2;
      std::size_t pc = cols;
      double best = -kEps;
      for (std::size_t c = 0; c < cols; ++c) {
        if (!allowed[c]) continue;
        const double rc = obj(c);
        if (rc < best) {
          best = rc;
          pc = c;
          if (bland) break;  // first eligible column
        }
      }
      if (pc == cols) return true;

      std::size_t pr = rows;
      double best_ratio = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < rows; ++r) {
        const double a = at(r, pc);
        if (a > kEps) {
          const double ratio = rhs(r) / a;
          if (ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps && (pr == rows || basis[r] < basis[pr]))) {
            best_ratio = ratio;
            pr = r;
          }
        }
      }
      if (pr == rows) {
        *unbounded = true;
        return true;
      }
      pivot(pr, pc);
    }
    return false;
  }
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c, std::size_t max_iters) {
  const std::size_t m = A.size();
  const std::size_t n = c.size();

  std::vector<std::size_t> artificial_of(m, std::numeric_limits<std::size_t>::max());
  std::size_t n_art = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (b[r] < 0.0) artificial_of[r] = n_art++;
  }

  Tableau tab;
  tab.rows = m;
  tab.cols = n + m + n_art;
  tab.t.assign((m + 1) * (tab.cols + 1), 0.0);
  tab.basis.resize(m);

  for (std::size_t r = 0; r < m; ++r) {
    const double sign = b[r] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) tab.at(r, j) = sign * A[r][j];
    tab.at(r, n + r) = sign;  // slack
    tab.rhs(r) = sign * b[r];
    if (artificial_of[r] != std::numeric_limits<std::size_t>::max()) {
      const std::size_t ac = n + m + artificial_of[r];
      tab.at(r, ac) = 1.0;
      tab.basis[r] = ac;
    } else {
      tab.basis[r] = n + r;
    }
  }

  std::vector<char> allowed(tab.cols, 1);
  bool unbounded = false;

  if (n_art > 0) {
    // Phase 1: minimize the sum of artificials. Their objective coefficient
    // is +1; reducing against the artificial basis rows then leaves their
    // columns with zero reduced cost, so they never re-enter.
    for (std::size_t cidx = n + m; cidx < tab.cols; ++cidx) {
      tab.t[m * (tab.cols + 1) + cidx] = 1.0;
    }
    for (std::size_t r = 0; r < m; ++r) {
      if (artificial_of[r] == std::numeric_limits<std::size_t>::max()) continue;
      for (std::size_t cidx = 0; cidx <= tab.cols; ++cidx) {
        tab.t[m * (tab.cols + 1) + cidx] -= tab.at(r, cidx);
      }
    }
    if (!tab.optimize(allowed, max_iters, &unbounded)) return {LpStatus::kIterLimit, 0.0, {}};
    const double phase1 = -tab.t[m * (tab.cols + 1) + tab.cols];
    if (phase1 > 1e-7) return {LpStatus::kInfeasible, 0.0, {}};

    // Drive remaining artificials out of the basis where possible.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis[r] < n + m) continue;
      for (std::size_t cidx = 0; cidx < n + m; ++cidx) {
        if (std::abs(tab.at(r, cidx)) > kEps) {
          tab.pivot(r, cidx);
          break;
        }
      }
    }
    for (std::size_t cidx = n + m; cidx < tab.cols; ++cidx) allowed[cidx] = 0;
  }

  // Phase 2 objective row, reduced against the current basis.
  for (std::size_t cidx = 0; cidx <= tab.cols; ++cidx) tab.t[m * (tab.cols + 1) + cidx] = 0.0;
  for (std::size_t j = 0; j < n; ++j) tab.obj(j) = c[j];
  for (std::size_t r = 0; r < m; ++r) {
    const std::size_t bv = tab.basis[r];
    if (bv < n && c[bv] != 0.0) {
      const double factor = c[bv];
      for (std::size_t cidx = 0; cidx <= tab.cols; ++cidx) {
        tab.t[m * (tab.cols + 1) + cidx] -= factor * tab.at(r, cidx);
      }
    }
  }

  if (!tab.optimize(allowed, max_iters, &unbounded)) return {LpStatus::kIterLimit, 0.0, {}};
  if (unbounded) return {LpStatus::kUnbounded, 0.0, {}};

  LpResult res;
  res.status = LpStatus::kOptimal;
  res.x.assign(n, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    if (tab.basis[r] < n) res.x[tab.basis[r]] = tab.rhs(r);
  }
  res.objective = 0.0;
  for (std::size_t j = 0; j < n; ++j) res.objective += c[j] * res.x[j];
  return res;
}

}  // namespace ers::detail
