#pragma once

#include <algorithm>
#include <span>
#include <string>
#include <string_view>

#include "tadpost/errors.hpp"
#include "tadpost/interval.hpp"

namespace tadpost {

inline constexpr double kDefaultFusionEpsilon = 1e-6;

enum class FusionMode { dwf, mean };

inline FusionMode parse_fusion_mode(std::string_view name) {
  if (name == "dwf") return FusionMode::dwf;
  if (name == "mean") return FusionMode::mean;
  throw InvalidArgument("unknown fusion mode '" + std::string(name) + "' (expected dwf or mean)");
}

constexpr std::string_view to_string(FusionMode mode) noexcept { return mode == FusionMode::dwf ? "dwf" : "mean"; }

struct StreamConfidences {
  double noun = 0.0;
  double verb = 0.0;
};

// Proposal-level boundary authority of each stream.
struct FusionWeights {
  double noun_confidence = 0.0;
  double verb_confidence = 0.0;
  double noun_weight = 0.0;
  double verb_weight = 0.0;
  double epsilon = kDefaultFusionEpsilon;
};

inline StreamConfidences stream_confidences(std::span<const double> noun_scores, std::span<const double> verb_scores) {
  if (noun_scores.empty() || verb_scores.empty()) throw EmptyVector("stream score vector is empty");
  return {*std::max_element(noun_scores.begin(), noun_scores.end()),
          *std::max_element(verb_scores.begin(), verb_scores.end())};
}

inline FusionWeights dwf_weights(double noun_confidence, double verb_confidence,
                                 double epsilon = kDefaultFusionEpsilon) {
  if (!(noun_confidence >= 0.0 && verb_confidence >= 0.0)) throw InvalidArgument("confidences must be non-negative");
  if (!(epsilon > 0.0)) throw InvalidArgument("epsilon must be positive");
  const double denom = noun_confidence + verb_confidence + epsilon;
  return {noun_confidence, verb_confidence, noun_confidence / denom, verb_confidence / denom, epsilon};
}

inline FusionWeights dwf_weights(const StreamConfidences& c, double epsilon = kDefaultFusionEpsilon) {
  return dwf_weights(c.noun, c.verb, epsilon);
}

// Confidence-weighted interpolation of the two boundaries, start and end
// alike. Action scores are untouched.
template <typename Unit>
BasicInterval<Unit> fuse_boundaries(const BasicInterval<Unit>& noun, const BasicInterval<Unit>& verb,
                                    const FusionWeights& w) {
  if (!noun.valid() || !verb.valid()) throw DegenerateInterval("fusion inputs must have start < end");
  const BasicInterval<Unit> fused{w.noun_weight * noun.start + w.verb_weight * verb.start,
                                  w.noun_weight * noun.end + w.verb_weight * verb.end};
  if (!fused.valid()) throw DegenerateInterval("fused boundary collapsed (both confidences near zero?)");
  return fused;
}

template <typename Unit>
BasicInterval<Unit> hard_mean_fusion(const BasicInterval<Unit>& noun, const BasicInterval<Unit>& verb) {
  return {0.5 * (noun.start + verb.start), 0.5 * (noun.end + verb.end)};
}

template <typename Unit>
BasicInterval<Unit> fuse(FusionMode mode, const BasicInterval<Unit>& noun, const BasicInterval<Unit>& verb,
                         const StreamConfidences& c, double epsilon = kDefaultFusionEpsilon) {
  if (mode == FusionMode::mean) return hard_mean_fusion(noun, verb);
  return fuse_boundaries(noun, verb, dwf_weights(c, epsilon));
}

}  // namespace tadpost
