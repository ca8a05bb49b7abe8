#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "tadpost/errors.hpp"

namespace tadpost {

using FeatureVector = std::vector<double>;
using FeatureSequence = std::vector<FeatureVector>;

inline constexpr double kDefaultGateEpsilon = 1e-6;

// Auxiliary-stream features after reliability weighting.
struct GatedSequence {
  FeatureSequence features;
  std::vector<double> weights;
};

// Min-max normalised reliability: the most uncertain step gets ~0, the least
// uncertain gets 1. A constant sequence maps to all ones.
inline std::vector<double> uncertainty_gate(std::span<const double> uncertainties,
                                            double epsilon = kDefaultGateEpsilon) {
  if (uncertainties.empty()) throw EmptySequence("uncertainty sequence is empty");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const auto [lo_it, hi_it] = std::minmax_element(uncertainties.begin(), uncertainties.end());
  const double lo = *lo_it;
  const double range = *hi_it - lo;
  std::vector<double> weights;
  weights.reserve(uncertainties.size());
  for (double u : uncertainties) weights.push_back(std::clamp((range - (u - lo) + epsilon) / (range + epsilon), 0.0, 1.0));
  return weights;
}

inline GatedSequence apply_gate(const FeatureSequence& auxiliary, std::span<const double> weights) {
  if (auxiliary.size() != weights.size()) throw LengthMismatch("auxiliary features and gate weights differ in length");
  GatedSequence out;
  out.weights.assign(weights.begin(), weights.end());
  out.features.reserve(auxiliary.size());
  for (std::size_t t = 0; t < auxiliary.size(); ++t) {
    FeatureVector v = auxiliary[t];
    for (double& x : v) x *= weights[t];
    out.features.push_back(std::move(v));
  }
  return out;
}

namespace detail {
inline std::size_t common_dimension(const FeatureSequence& main, const FeatureSequence& keys) {
  if (keys.empty()) throw EmptySequence("attention requires at least one key position");
  const std::size_t dim = keys.front().size();
  const auto mismatched = [dim](const FeatureVector& v) { return v.size() != dim; };
  if (std::any_of(keys.begin(), keys.end(), mismatched) || std::any_of(main.begin(), main.end(), mismatched))
    throw DimensionMismatch("main and gated features must share one dimension");
  return dim;
}
}  // namespace detail

// Row-stochastic weights softmax(scale * Q K^T), one row per query.
inline std::vector<std::vector<double>> attention_weights(const FeatureSequence& queries, const FeatureSequence& keys,
                                                          double scale) {
  if (!(scale > 0.0)) throw InvalidArgument("attention scale must be positive");
  const std::size_t dim = detail::common_dimension(queries, keys);
  std::vector<std::vector<double>> rows;
  rows.reserve(queries.size());
  for (const auto& q : queries) {
    std::vector<double> logits(keys.size());
    for (std::size_t k = 0; k < keys.size(); ++k) {
      double dot = 0.0;
      for (std::size_t d = 0; d < dim; ++d) dot += q[d] * keys[k][d];
      logits[k] = scale * dot;
    }
    const double peak = *std::max_element(logits.begin(), logits.end());
    double total = 0.0;
    for (double& l : logits) total += (l = std::exp(l - peak));
    for (double& l : logits) l /= total;
    rows.push_back(std::move(logits));
  }
  return rows;
}

// Single-head scaled dot-product attention from the main stream onto the
// gated auxiliary stream, added back residually: H + softmax(s H A^T) A.
inline FeatureSequence cross_window_attention(const FeatureSequence& main, const GatedSequence& gated, double scale) {
  const auto& values = gated.features;
  const auto weights = attention_weights(main, values, scale);
  const std::size_t dim = values.front().size();
  FeatureSequence out = main;
  for (std::size_t t = 0; t < main.size(); ++t)
    for (std::size_t k = 0; k < values.size(); ++k)
      for (std::size_t d = 0; d < dim; ++d) out[t][d] += weights[t][k] * values[k][d];
  return out;
}

}  // namespace tadpost
