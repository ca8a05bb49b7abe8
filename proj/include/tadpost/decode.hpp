#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "tadpost/errors.hpp"
#include "tadpost/interval.hpp"
#include "tadpost/timeline.hpp"

namespace tadpost {

struct PointDistance {
  double to_start = 0.0;
  double to_end = 0.0;
};

// Per-point output of one pyramid level of an anchor-free head.
struct HeadOutput {
  int level = 1;
  std::int64_t level_stride = 1;
  std::vector<std::vector<double>> point_scores;
  std::vector<PointDistance> point_distances;
  std::vector<bool> validity_mask;

  void validate() const {
    if (level_stride < 1) throw InvalidArgument("level stride must be positive");
    const std::size_t n = point_scores.size();
    if (point_distances.size() != n || validity_mask.size() != n)
      throw LengthMismatch("scores, distances and mask must have equal length");
    for (const auto& row : point_scores)
      for (double p : row)
        if (!(p >= 0.0 && p <= 1.0)) throw InvalidArgument("class probability outside [0, 1]");
    for (const auto& d : point_distances)
      if (!(d.to_start >= 0.0 && d.to_end >= 0.0)) throw InvalidArgument("boundary distance must be non-negative");
  }
};

// One factor stream's candidate: an interval in feature coordinates and the
// full class-probability vector of that stream.
struct StreamProposal {
  FeatureSpan boundary;
  std::vector<double> scores;
  Window source_window;

  double max_score() const noexcept {
    return scores.empty() ? 0.0 : *std::max_element(scores.begin(), scores.end());
  }
};

// Distances are in units of the level stride.
inline std::vector<StreamProposal> decode_anchor_free(const HeadOutput& head, const Window& source_window = {}) {
  head.validate();
  const auto stride = static_cast<double>(head.level_stride);
  std::vector<StreamProposal> out;
  for (std::size_t t = 0; t < head.point_scores.size(); ++t) {
    const auto& d = head.point_distances[t];
    if (!head.validity_mask[t] || d.to_start + d.to_end <= 0.0) continue;
    const double location = static_cast<double>(t) * stride;
    out.push_back({{location - d.to_start * stride, location + d.to_end * stride}, head.point_scores[t], source_window});
  }
  return out;
}

inline constexpr std::size_t kDefaultPreNmsTopK = 5000;

// Threshold on the maximum class score, then keep the top_k strongest.
// Order: score desc, start asc, input position asc.
inline std::vector<StreamProposal> pre_nms_select(const std::vector<StreamProposal>& proposals, double min_score,
                                                  std::size_t top_k = kDefaultPreNmsTopK) {
  std::vector<std::pair<double, std::size_t>> keyed;
  keyed.reserve(proposals.size());
  for (std::size_t i = 0; i < proposals.size(); ++i) {
    const double s = proposals[i].max_score();
    if (s >= min_score) keyed.emplace_back(s, i);
  }
  const auto before = [&](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    const double sa = proposals[a.second].boundary.start;
    const double sb = proposals[b.second].boundary.start;
    if (sa != sb) return sa < sb;
    return a.second < b.second;
  };
  const std::size_t keep = std::min(top_k, keyed.size());
  std::partial_sort(keyed.begin(), keyed.begin() + static_cast<std::ptrdiff_t>(keep), keyed.end(), before);
  std::vector<StreamProposal> out;
  out.reserve(keep);
  for (std::size_t i = 0; i < keep; ++i) out.push_back(proposals[keyed[i].second]);
  return out;
}

// Shift every window's proposals into one global feature frame. Overlapping
// windows keep their duplicates; suppression happens later.
inline std::vector<StreamProposal> pool_windows(std::vector<std::pair<Window, std::vector<StreamProposal>>> per_window) {
  std::stable_sort(per_window.begin(), per_window.end(), [](const auto& a, const auto& b) {
    if (a.first.start_feature != b.first.start_feature) return a.first.start_feature < b.first.start_feature;
    return a.first.length_features < b.first.length_features;
  });
  std::vector<StreamProposal> out;
  for (auto& [window, proposals] : per_window) {
    const auto shift = static_cast<double>(window.start_feature);
    for (auto& p : proposals) {
      if (!(p.source_window == window)) throw WindowMismatch("proposal references a window absent from the input");
      p.boundary.start += shift;
      p.boundary.end += shift;
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace tadpost
