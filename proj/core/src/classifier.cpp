#include "ers/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "ers/errors.hpp"

namespace ers {

std::string to_string(ModeLabel m) {
  return m == ModeLabel::kLaneKeeping ? "lane_keeping" : "lane_changing";
}

ModeLabel mode_label_from_string(const std::string& s) {
  if (s == "lane_keeping") return ModeLabel::kLaneKeeping;
  if (s == "lane_changing") return ModeLabel::kLaneChanging;
  throw InvalidParametersError("unknown mode label '" + s + "'");
}

std::vector<ModeLabel> label_transitions(const std::vector<bool>& blinker,
                                         std::size_t horizon) {
  if (blinker.size() != horizon + 1) {
    throw LengthMismatchError("blinker sequence length " + std::to_string(blinker.size()) +
                              " != horizon+1 = " + std::to_string(horizon + 1));
  }
  std::vector<ModeLabel> labels(horizon + 1, ModeLabel::kLaneKeeping);
  auto first = std::find(blinker.begin(), blinker.end(), true);
  if (first != blinker.end()) {
    std::fill(labels.begin() + (first - blinker.begin()), labels.end(),
              ModeLabel::kLaneChanging);
  }
  return labels;
}

double Hyperplane::score(const EnvObservation& e) const {
  if (e.features.size() != weights.size()) {
    throw DimensionMismatchError("observation has " + std::to_string(e.features.size()) +
                                 " features, model expects " + std::to_string(weights.size()));
  }
  double s = bias;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    s += weights[k] * (e.features[k] - feature_means[k]) / feature_scales[k];
  }
  return s;
}

Hyperplane train_max_margin(const std::vector<EnvObservation>& examples,
                            const std::vector<ModeLabel>& labels, double penalty, double tol,
                            std::size_t max_iters) {
  if (examples.size() != labels.size()) {
    throw LengthMismatchError("examples and labels differ in length");
  }
  const std::size_t n = examples.size();
  if (n == 0) throw EmptyDatasetError("no training examples");
  if (!(penalty > 0.0)) throw InvalidParametersError("penalty must be positive");
  const std::size_t dim = examples.front().features.size();

  std::size_t positives = 0;
  for (ModeLabel l : labels) {
    if (l == ModeLabel::kLaneChanging) ++positives;
  }
  if (positives == 0 || positives == n) {
    throw SingleClassError("training data contains a single class");
  }

  // Standardize features.
  Hyperplane h;
  h.feature_means.assign(dim, 0.0);
  h.feature_scales.assign(dim, 1.0);
  for (const auto& e : examples) {
    if (e.features.size() != dim) throw DimensionMismatchError("ragged feature vectors");
    for (std::size_t k = 0; k < dim; ++k) h.feature_means[k] += e.features[k];
  }
  for (double& v : h.feature_means) v /= static_cast<double>(n);
  std::vector<double> var(dim, 0.0);
  for (const auto& e : examples) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = e.features[k] - h.feature_means[k];
      var[k] += d * d;
    }
  }
  for (std::size_t k = 0; k < dim; ++k) {
    h.feature_scales[k] = std::sqrt(var[k] / static_cast<double>(n));
    if (h.feature_scales[k] < 1e-12) h.feature_scales[k] = 1.0;  // constant feature
  }

  // Standardized design with an appended bias feature (regularized bias).
  const std::size_t d1 = dim + 1;
  std::vector<double> X(n * d1);
  std::vector<double> y(n);
  std::vector<double> sqnorm(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < dim; ++k) {
      const double v = (examples[i].features[k] - h.feature_means[k]) / h.feature_scales[k];
      X[i * d1 + k] = v;
      sqnorm[i] += v * v;
    }
    X[i * d1 + dim] = 1.0;
    sqnorm[i] += 1.0;
    y[i] = labels[i] == ModeLabel::kLaneChanging ? 1.0 : -1.0;
  }

  // Dual coordinate descent for L1-loss SVM: max sum(a) - 0.5||w||^2,
  // w = sum a_i y_i x_i, 0 <= a_i <= C.
  const double C = penalty;
  std::vector<double> alpha(n, 0.0);
  std::vector<double> w(d1, 0.0);
  bool converged = false;
  for (std::size_t pass = 0; pass < max_iters; ++pass) {
    double max_violation = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* xi = &X[i * d1];
      double g = -1.0;
      for (std::size_t k = 0; k < d1; ++k) g += y[i] * w[k] * xi[k];
      double pg = g;  // projected gradient
      if (alpha[i] <= 0.0 && g > 0.0) pg = 0.0;
      if (alpha[i] >= C && g < 0.0) pg = 0.0;
      max_violation = std::max(max_violation, std::abs(pg));
      if (pg == 0.0) continue;
      const double old = alpha[i];
      alpha[i] = std::clamp(old - g / sqnorm[i], 0.0, C);
      const double delta = (alpha[i] - old) * y[i];
      for (std::size_t k = 0; k < d1; ++k) w[k] += delta * xi[k];
    }
    if (max_violation < tol) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergenceError("dual coordinate descent hit the iteration cap");

  h.weights.assign(w.begin(), w.begin() + dim);
  h.bias = w[dim];
  double wnorm = 0.0;
  for (std::size_t k = 0; k < dim; ++k) wnorm += h.weights[k] * h.weights[k];
  wnorm = std::sqrt(wnorm);
  if (wnorm < 1e-15) throw NoConvergenceError("degenerate zero weight vector");
  h.margin = 2.0 / wnorm;
  return h;
}

ModeLabel classify(const Hyperplane& h, const EnvObservation& e) {
  return h.score(e) > 0.0 ? ModeLabel::kLaneChanging : ModeLabel::kLaneKeeping;
}

std::string hyperplane_to_json(const Hyperplane& h) {
  nlohmann::json j;
  j["weights"] = h.weights;
  j["bias"] = h.bias;
  j["margin"] = h.margin;
  j["feature_means"] = h.feature_means;
  j["feature_scales"] = h.feature_scales;
  return j.dump(2);
}

Hyperplane hyperplane_from_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  Hyperplane h;
  h.weights = j.at("weights").get<std::vector<double>>();
  h.bias = j.at("bias").get<double>();
  h.margin = j.value("margin", 0.0);
  h.feature_means = j.at("feature_means").get<std::vector<double>>();
  h.feature_scales = j.at("feature_scales").get<std::vector<double>>();
  return h;
}

}  // namespace ers
