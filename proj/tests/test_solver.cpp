#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "ers/errors.hpp"
#include "ers/solver.hpp"
#include "test_support.hpp"

using namespace ers;
using ers::testing::one_channel_dataset;
using ers::testing::random_dataset;

namespace {

/// Two position channels, one step beyond the start; trajectories are points
/// A=(0,0), B=(1,1), C=(0,3) at t=1, all starting at the origin.
ChannelDataset abc_points() {
  ChannelDataset d;
  d.channel_names = {"x", "y"};
  d.channel_indices = {0, 1};
  d.dt = 1.0;
  d.num_trajectories = 3;
  d.num_steps = 2;
  d.num_channels = 2;
  d.values = {0, 0, 0, 0,   // A
              0, 0, 1, 1,   // B
              0, 0, 0, 3};  // C
  return d;
}

std::vector<std::size_t> selected(const ErsSolution& s) { return s.selected_indices(); }

}  // namespace

TEST_CASE("build_instance computes m and envelopes") {
  auto d = one_channel_dataset({{0.0}, {0.1}, {0.2}, {10.0}});
  auto inst = build_instance(d, 0.75);
  CHECK(inst.m == 3);
  CHECK(inst.env_max[0][0] == 10.0);
  CHECK(inst.env_min[0][0] == 0.0);

  // ceil is exact even when alpha*N lands on a representable near-integer
  CHECK(build_instance(random_dataset(1, 10, 1, 1), 0.9).m == 9);
  CHECK(build_instance(random_dataset(1, 10, 1, 1), 0.91).m == 10);
  CHECK(build_instance(random_dataset(1, 3, 1, 1), 1.0).m == 3);

  CHECK_THROWS_AS(build_instance(d, 0.0), AlphaOutOfRangeError);
  CHECK_THROWS_AS(build_instance(d, 1.5), AlphaOutOfRangeError);
  ChannelDataset empty;
  CHECK_THROWS_AS(build_instance(empty, 0.5), EmptyDatasetError);
}

TEST_CASE("exact solver drops the outlier") {
  // One coordinate with values {0, 0.1, 0.2, 10}; keeping 3 of 4 the optimum
  // drops the 10 and spans [0, 0.2].
  auto d = one_channel_dataset({{0.0}, {0.1}, {0.2}, {10.0}});
  auto inst = build_instance(d, 0.75);
  auto s = solve_exact(inst);
  CHECK(s.proven_optimal);
  CHECK(s.area == doctest::Approx(0.2));
  CHECK(selected(s) == std::vector<std::size_t>{0, 1, 2});
  CHECK(s.tube.upper[0][0] == 0.2);
  CHECK(s.tube.lower[0][0] == 0.0);
}

TEST_CASE("two-channel point instance keeps the close pair") {
  // Keeping 2 of A=(0,0), B=(1,1), C=(0,3): {A,B} area 1+1=2, {A,C} 0+3=3,
  // {B,C} 1+2=3, so {A,B} wins.
  auto inst = build_instance(abc_points(), 2.0 / 3.0);
  REQUIRE(inst.m == 2);
  for (auto* solve : {+[](const ErsInstance& i) { return solve_exact(i); },
                      +[](const ErsInstance& i) { return solve_naive(i); },
                      +[](const ErsInstance& i) { return solve_milp_textbook(i); }}) {
    auto s = solve(inst);
    CHECK(s.proven_optimal);
    CHECK(s.area == doctest::Approx(2.0));
    CHECK(selected(s) == std::vector<std::size_t>{0, 1});
  }
}

TEST_CASE("ties resolve to the lexicographically smallest mask") {
  // Symmetric instance: values {0, 1, 2} keeping 2. {0,1} and {1,2} both have
  // area 1; mask [0,1,1] precedes [1,1,0], so {1,2} must win on every path.
  auto inst = build_instance(one_channel_dataset({{0.0}, {1.0}, {2.0}}), 2.0 / 3.0);
  for (auto* solve : {+[](const ErsInstance& i) { return solve_exact(i); },
                      +[](const ErsInstance& i) { return solve_naive(i); },
                      +[](const ErsInstance& i) { return solve_milp_textbook(i); }}) {
    auto s = solve(inst);
    CHECK(s.area == doctest::Approx(1.0));
    CHECK(selected(s) == std::vector<std::size_t>{1, 2});
  }
}

TEST_CASE("alpha = 1 keeps everything") {
  auto d = random_dataset(7, 9, 4, 2);
  auto inst = build_instance(d, 1.0);
  auto s = solve_exact(inst);
  CHECK(s.proven_optimal);
  CHECK(s.selected_count() == 9);
  std::vector<std::size_t> all(9);
  for (std::size_t i = 0; i < 9; ++i) all[i] = i;
  CHECK(s.area == selection_area(d, all));
}

TEST_CASE("greedy peel is feasible and no better than the optimum") {
  for (std::uint64_t seed : {11u, 12u, 13u}) {
    auto d = random_dataset(seed, 10, 3, 2);
    auto inst = build_instance(d, 0.7);
    auto g = greedy_peel_selection(d, inst.m);
    CHECK(g.size() == inst.m);
    CHECK(std::is_sorted(g.begin(), g.end()));
    auto s = solve_exact(inst);
    CHECK(selection_area(d, g) >= s.area);
  }
}

TEST_CASE("all three solvers agree on seeded random instances") {
  // A compact version of the full acceptance sweep: identical area and
  // identical selection across exact, naive, and the big-M cross-check.
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    std::size_t n = 4 + seed % 7;          // 4..10
    std::size_t steps = 2 + seed % 3;      // 2..4
    std::size_t channels = 1 + seed % 2;   // 1..2
    auto d = random_dataset(seed * 1000 + 5, n, steps, channels, 0.25);
    std::size_t k = 1 + seed % 3;
    if (k >= n) k = n - 1;
    double alpha = static_cast<double>(n - k) / static_cast<double>(n);
    auto inst = build_instance(d, alpha);
    auto e = solve_exact(inst);
    auto nv = solve_naive(inst);
    auto mp = solve_milp_textbook(inst);
    CAPTURE(seed);
    CHECK(e.proven_optimal);
    CHECK(nv.proven_optimal);
    CHECK(mp.proven_optimal);
    CHECK(e.area == doctest::Approx(nv.area).epsilon(1e-12));
    CHECK(mp.area == doctest::Approx(nv.area).epsilon(1e-9));
    CHECK(e.selection == nv.selection);
    CHECK(mp.selection == nv.selection);
  }
}

TEST_CASE("skipping tie refinement preserves the optimal area") {
  // With refine_ties off the search stops at the first optimal selection;
  // the area must still match, including on data with duplicated rows.
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto d = random_dataset(seed * 77 + 3, 8, 3, 2, 0.25);
    // Duplicate the first trajectory over the last row to force ties.
    std::size_t coords = d.num_steps * d.num_channels;
    for (std::size_t k = 0; k < coords; ++k) {
      d.values[(d.num_trajectories - 1) * coords + k] = d.values[k];
    }
    auto inst = build_instance(d, 0.75);
    SolveConfig fast;
    fast.refine_ties = false;
    auto quick = solve_exact(inst, fast);
    auto full = solve_exact(inst);
    CAPTURE(seed);
    CHECK(quick.proven_optimal);
    CHECK(quick.area == doctest::Approx(full.area).epsilon(1e-12));
    CHECK(quick.selected_count() == full.selected_count());
  }
}

TEST_CASE("worker count does not change the answer") {
  auto d = random_dataset(99, 16, 5, 2);
  auto inst = build_instance(d, 0.75);
  SolveConfig one;
  one.workers = 1;
  SolveConfig four;
  four.workers = 4;
  auto a = solve_exact(inst, one);
  auto b = solve_exact(inst, four);
  CHECK(a.area == b.area);
  CHECK(a.selection == b.selection);
}

TEST_CASE("node limit yields a feasible incumbent without optimality") {
  auto d = random_dataset(3, 14, 4, 2);
  auto inst = build_instance(d, 0.5);
  SolveConfig cfg;
  cfg.node_limit = 1;
  auto s = solve_exact(inst, cfg);
  CHECK_FALSE(s.proven_optimal);
  CHECK(s.selected_count() == inst.m);
  auto full = solve_exact(inst);
  CHECK(s.area >= full.area);
}

TEST_CASE("naive guard rejects combinatorial blowups") {
  auto d = random_dataset(5, 60, 1, 1);
  auto inst = build_instance(d, 0.5);
  CHECK_THROWS_AS(solve_naive(inst), CombinatorialBlowupError);
  CHECK(binomial_guard(4, 2) == 6.0);
  CHECK(binomial_guard(60, 30) >= 1e7);
}

TEST_CASE("sweep: plain vs accelerated") {
  auto d = random_dataset(21, 18, 4, 2);
  std::vector<double> alphas = {1.0, 0.9, 0.8, 0.7};
  auto plain = sweep(d, alphas);
  auto accel = sweep(d, alphas, {}, true);
  REQUIRE(plain.entries.size() == 4);
  REQUIRE(accel.entries.size() == 4);
  CHECK_FALSE(plain.accelerated);
  CHECK(accel.accelerated);
  // First grid point (alpha = 1) is identical; afterwards the accelerated
  // run's area can only be >= the exact optimum.
  CHECK(accel.entries[0].solution.area == plain.entries[0].solution.area);
  for (std::size_t j = 0; j < 4; ++j) {
    CAPTURE(j);
    CHECK(accel.entries[j].solution.area >= plain.entries[j].solution.area - 1e-12);
    CHECK(plain.entries[j].pool_size == 18);
    // Pools shrink with the previous selection in accelerated mode.
    if (j > 0) {
      CHECK(accel.entries[j].pool_size == accel.entries[j - 1].solution.selected_count());
    }
    // m is always relative to the original N.
    CHECK(accel.entries[j].solution.selected_count() ==
          static_cast<std::size_t>(std::ceil(alphas[j] * 18 - 1e-12)));
  }
  // Areas are non-increasing as alpha decreases.
  for (std::size_t j = 1; j < 4; ++j) {
    CHECK(plain.entries[j].solution.area <= plain.entries[j - 1].solution.area + 1e-12);
  }
  CHECK_THROWS_AS(sweep(d, {0.8, 0.9}), AlphaOutOfRangeError);
}

TEST_CASE("solution json carries the full result") {
  auto d = one_channel_dataset({{0.0}, {0.1}, {0.2}, {10.0}});
  auto inst = build_instance(d, 0.75);
  auto s = solve_exact(inst);
  auto j = nlohmann::json::parse(solution_to_json(s, inst.alpha, inst.m));
  CHECK(j["alpha"] == 0.75);
  CHECK(j["m"] == 3);
  CHECK(j["area"] == doctest::Approx(0.2));
  CHECK(j["proven_optimal"] == true);
  CHECK(j["selection"].size() == 4);
  CHECK(j["selection"][3] == false);
  CHECK(j.contains("tube"));
}
