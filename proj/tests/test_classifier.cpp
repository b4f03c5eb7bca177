#include <doctest.h>

#include <cmath>

#include "ers/classifier.hpp"
#include "ers/errors.hpp"
#include "ers/rng.hpp"

using namespace ers;

namespace {

EnvObservation obs(std::vector<double> f, std::size_t t = 0) { return {std::move(f), t}; }

}  // namespace

TEST_CASE("label_transitions follows the blinker") {
  SUBCASE("never active") {
    auto m = label_transitions(std::vector<bool>(5, false), 4);
    CHECK(m == std::vector<ModeLabel>(5, ModeLabel::kLaneKeeping));
  }
  SUBCASE("active from step 2") {
    auto m = label_transitions({false, false, true, true, false}, 4);
    std::vector<ModeLabel> want = {ModeLabel::kLaneKeeping, ModeLabel::kLaneKeeping,
                                   ModeLabel::kLaneChanging, ModeLabel::kLaneChanging,
                                   ModeLabel::kLaneChanging};
    CHECK(m == want);
  }
  SUBCASE("active at step 0") {
    auto m = label_transitions({true, false, false}, 2);
    CHECK(m == std::vector<ModeLabel>(3, ModeLabel::kLaneChanging));
  }
  SUBCASE("length mismatch") {
    CHECK_THROWS_AS(label_transitions({true, false}, 4), LengthMismatchError);
  }
}

TEST_CASE("separable 2-d training recovers the margin") {
  // Two clusters on the x axis: negatives at x <= -1, positives at x >= +1.
  std::vector<EnvObservation> xs;
  std::vector<ModeLabel> ys;
  for (double v : {-2.0, -1.5, -1.0}) {
    xs.push_back(obs({v, 0.3 * v}));
    ys.push_back(ModeLabel::kLaneKeeping);
  }
  for (double v : {1.0, 1.5, 2.0}) {
    xs.push_back(obs({v, 0.3 * v}));
    ys.push_back(ModeLabel::kLaneChanging);
  }
  auto h = train_max_margin(xs, ys, 100.0);
  CHECK(h.margin > 0.0);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(classify(h, xs[i]) == ys[i]);
  }
  // The decision boundary sits between the clusters.
  CHECK(h.score(obs({-3.0, -0.9})) < 0.0);
  CHECK(h.score(obs({3.0, 0.9})) > 0.0);
}

TEST_CASE("training is scale invariant thanks to standardization") {
  std::vector<EnvObservation> xs, xs_scaled;
  std::vector<ModeLabel> ys;
  CounterRng rng(17, 3);
  for (int i = 0; i < 40; ++i) {
    double cls = (i % 2 == 0) ? -1.0 : 1.0;
    double a = cls * 2.0 + (rng.next_uniform01() - 0.5);
    double b = rng.next_uniform01();
    xs.push_back(obs({a, b}));
    xs_scaled.push_back(obs({a * 1e4, b * 1e-4}));
    ys.push_back(cls < 0 ? ModeLabel::kLaneKeeping : ModeLabel::kLaneChanging);
  }
  auto h1 = train_max_margin(xs, ys);
  auto h2 = train_max_margin(xs_scaled, ys);
  std::size_t agree = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (classify(h1, xs[i]) == classify(h2, xs_scaled[i])) ++agree;
  }
  CHECK(agree == xs.size());
}

TEST_CASE("soft margin tolerates a mislabeled point") {
  std::vector<EnvObservation> xs;
  std::vector<ModeLabel> ys;
  for (double v : {-2.0, -1.8, -1.6, -1.4}) {
    xs.push_back(obs({v}));
    ys.push_back(ModeLabel::kLaneKeeping);
  }
  for (double v : {1.4, 1.6, 1.8, 2.0}) {
    xs.push_back(obs({v}));
    ys.push_back(ModeLabel::kLaneChanging);
  }
  // One flipped label deep inside the positive cluster.
  xs.push_back(obs({1.9}));
  ys.push_back(ModeLabel::kLaneKeeping);
  auto h = train_max_margin(xs, ys, 1.0);
  // The bulk is still classified correctly.
  std::size_t correct = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    if (classify(h, xs[i]) == ys[i]) ++correct;
  }
  CHECK(correct == xs.size() - 1);
}

TEST_CASE("degenerate inputs") {
  std::vector<EnvObservation> xs = {obs({1.0}), obs({2.0})};
  CHECK_THROWS_AS(train_max_margin(xs, {ModeLabel::kLaneKeeping, ModeLabel::kLaneKeeping}),
                  SingleClassError);
  CHECK_THROWS_AS(train_max_margin({}, {}), EmptyDatasetError);
  CHECK_THROWS_AS(train_max_margin(xs, {ModeLabel::kLaneKeeping}), LengthMismatchError);

  // A constant feature must not produce NaNs.
  std::vector<EnvObservation> cs = {obs({1.0, 5.0}), obs({-1.0, 5.0}),
                                    obs({1.2, 5.0}), obs({-1.2, 5.0})};
  std::vector<ModeLabel> cy = {ModeLabel::kLaneChanging, ModeLabel::kLaneKeeping,
                               ModeLabel::kLaneChanging, ModeLabel::kLaneKeeping};
  auto h = train_max_margin(cs, cy);
  for (double w : h.weights) CHECK(std::isfinite(w));
  CHECK(classify(h, cs[0]) == ModeLabel::kLaneChanging);
  CHECK(classify(h, cs[1]) == ModeLabel::kLaneKeeping);
}

TEST_CASE("zero score classifies as lane keeping") {
  Hyperplane h;
  h.weights = {1.0};
  h.bias = 0.0;
  h.feature_means = {0.0};
  h.feature_scales = {1.0};
  CHECK(classify(h, obs({0.0})) == ModeLabel::kLaneKeeping);
  CHECK(classify(h, obs({1e-12})) == ModeLabel::kLaneChanging);
}

TEST_CASE("hyperplane json round trip") {
  std::vector<EnvObservation> xs = {obs({-1.0, 2.0}), obs({1.0, -2.0}),
                                    obs({-1.2, 2.1}), obs({1.2, -2.1})};
  std::vector<ModeLabel> ys = {ModeLabel::kLaneKeeping, ModeLabel::kLaneChanging,
                               ModeLabel::kLaneKeeping, ModeLabel::kLaneChanging};
  auto h = train_max_margin(xs, ys);
  auto back = hyperplane_from_json(hyperplane_to_json(h));
  CHECK(back.weights == h.weights);
  CHECK(back.bias == h.bias);
  CHECK(back.margin == h.margin);
  CHECK(back.feature_means == h.feature_means);
  CHECK(back.feature_scales == h.feature_scales);
  for (const auto& x : xs) CHECK(back.score(x) == doctest::Approx(h.score(x)));
}

TEST_CASE("mode label string round trip") {
  CHECK(mode_label_from_string(to_string(ModeLabel::kLaneKeeping)) == ModeLabel::kLaneKeeping);
  CHECK(mode_label_from_string(to_string(ModeLabel::kLaneChanging)) == ModeLabel::kLaneChanging);
  CHECK_THROWS_AS(mode_label_from_string("parking"), InvalidParametersError);
}
