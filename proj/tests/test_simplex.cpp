#include <doctest.h>

#include "simplex.hpp"

using ers::detail::LpStatus;
using ers::detail::solve_lp;

TEST_CASE("maximize x+y inside a box") {
  // max x + y s.t. x <= 2, y <= 3  ->  min -x - y, optimum -5 at (2, 3).
  auto r = solve_lp({{1, 0}, {0, 1}}, {2, 3}, {-1, -1});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-5.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(3.0));
}

TEST_CASE("classic two-constraint program") {
  // min -3x - 5y s.t. x + 2y <= 14, 3x - y <= 0, x, y >= 0.
  // Optimum at x = 2, y = 6 with objective -36.
  auto r = solve_lp({{1, 2}, {3, -1}}, {14, 0}, {-3, -5});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-36.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
  CHECK(r.x[1] == doctest::Approx(6.0));
}

TEST_CASE("negative right-hand sides go through phase 1") {
  // min x + y s.t. x + y >= 4 (i.e. -x - y <= -4), x <= 3.
  // Optimum objective 4, e.g. x = 3, y = 1 or any point on the face.
  auto r = solve_lp({{-1, -1}, {1, 0}}, {-4, 3}, {1, 1});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(4.0));
  CHECK(r.x[0] + r.x[1] == doctest::Approx(4.0));
  CHECK(r.x[0] <= 3.0 + 1e-9);
}

TEST_CASE("infeasible system is reported") {
  // x <= 1 and x >= 2 cannot both hold.
  auto r = solve_lp({{1}, {-1}}, {1, -2}, {1});
  CHECK(r.status == LpStatus::kInfeasible);
}

TEST_CASE("unbounded direction is reported") {
  // min -x with only x - y <= 1: grow x and y together forever.
  auto r = solve_lp({{1, -1}}, {1}, {-1, 0});
  CHECK(r.status == LpStatus::kUnbounded);
}

TEST_CASE("degenerate vertices do not cycle") {
  // Multiple constraints active at the origin-adjacent optimum.
  auto r = solve_lp({{1, 1}, {1, 1}, {1, 0}, {0, 1}}, {1, 1, 1, 1}, {-1, -1});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-1.0));
}

TEST_CASE("equality-like pair of inequalities") {
  // x + y <= 2 and -(x + y) <= -2 pin x + y = 2; min -x gives x = 2, y = 0.
  auto r = solve_lp({{1, 1}, {-1, -1}}, {2, -2}, {-1, 0});
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.objective == doctest::Approx(-2.0));
  CHECK(r.x[0] == doctest::Approx(2.0));
}
