#pragma once

#include <cstddef>
#include <vector>

namespace ers::detail {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterLimit };

struct LpResult {
  LpStatus status = LpStatus::kIterLimit;
  double objective = 0.0;
  std::vector<double> x;
};

/// Two-phase dense primal simplex for
///   min c'x  s.t.  A x <= b,  x >= 0.
/// Rows with negative b get an artificial variable in phase 1. Dantzig
/// pricing with a Bland fallback for anti-cycling.
LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c, std::size_t max_iters = 20000);

}  // namespace ers::detail
