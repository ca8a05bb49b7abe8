#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "tadpost/errors.hpp"
#include "tadpost/interval.hpp"

namespace tadpost {

// Frames per second as an exact ratio (e.g. 30000/1001).
struct FrameRate {
  std::int64_t num = 30;
  std::int64_t den = 1;

  constexpr double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend constexpr bool operator==(const FrameRate&, const FrameRate&) = default;
};

// Maps feature-sequence coordinates to seconds. Features are extracted every
// `stride_frames` frames, each centred `offset_frames` past its first frame.
struct FeatureGrid {
  std::int64_t stride_frames = 8;
  std::int64_t offset_frames = 4;
  FrameRate fps{};
  std::int64_t window_start_frame = 0;

  constexpr bool valid() const noexcept {
    return stride_frames >= 1 && offset_frames >= 0 && fps.num > 0 && fps.den > 0 && window_start_frame >= 0;
  }

  // Same grid, anchored at the window that begins at `start_feature`.
  constexpr FeatureGrid at_window(std::int64_t start_feature) const noexcept {
    FeatureGrid g = *this;
    g.window_start_frame = start_feature * stride_frames;
    return g;
  }

  friend constexpr bool operator==(const FeatureGrid&, const FeatureGrid&) = default;
};

struct Window {
  std::int64_t start_feature = 0;
  std::int64_t length_features = 0;

  constexpr std::int64_t end_feature() const noexcept { return start_feature + length_features; }
  friend constexpr bool operator==(const Window&, const Window&) = default;
};

inline constexpr std::int64_t kDefaultMaxWindowLength = 4608;
inline constexpr double kDefaultWindowOverlap = 0.5;

namespace detail {
inline void require_valid(const FeatureGrid& grid) {
  if (!grid.valid()) throw InvalidArgument("feature grid requires stride >= 1, offset >= 0, fps > 0");
}

inline double frame_to_seconds(double frame, const FeatureGrid& grid) {
  // Multiply before dividing so rational rates stay exact for integer frames.
  return frame * static_cast<double>(grid.fps.den) / static_cast<double>(grid.fps.num);
}
}  // namespace detail

// Centre time of feature `index`, ignoring any window start.
inline double feature_index_to_seconds(std::int64_t index, const FeatureGrid& grid) {
  detail::require_valid(grid);
  if (index < 0) throw InvalidArgument("feature index must be non-negative");
  const double frame = static_cast<double>(index * grid.stride_frames + grid.offset_frames);
  return detail::frame_to_seconds(frame, grid);
}

// Feature-coordinate boundary (relative to the grid's window) to seconds.
// Negative coordinates clamp to the window origin.
inline TimeSpan boundary_to_seconds(const FeatureSpan& b, const FeatureGrid& grid) {
  detail::require_valid(grid);
  if (!(b.start < b.end)) throw DegenerateInterval("boundary start must precede end");
  const auto convert = [&](double u) {
    const double frame = std::max(u, 0.0) * static_cast<double>(grid.stride_frames) +
                         static_cast<double>(grid.window_start_frame + grid.offset_frames);
    return detail::frame_to_seconds(frame, grid);
  };
  TimeSpan out{convert(b.start), convert(b.end)};
  if (!out.valid()) throw DegenerateInterval("boundary lies entirely before the window origin");
  return out;
}

// Inverse of boundary_to_seconds on the unclamped domain.
inline FeatureSpan seconds_to_boundary(const TimeSpan& t, const FeatureGrid& grid) {
  detail::require_valid(grid);
  const auto convert = [&](double s) {
    const double frame = s * static_cast<double>(grid.fps.num) / static_cast<double>(grid.fps.den);
    return (frame - static_cast<double>(grid.window_start_frame + grid.offset_frames)) /
           static_cast<double>(grid.stride_frames);
  };
  return {convert(t.start), convert(t.end)};
}

// Fixed-length windows advancing by floor(max_len * (1 - overlap)). The last
// window is shifted left so it ends exactly at total_features.
inline std::vector<Window> generate_windows(std::int64_t total_features,
                                            std::int64_t max_len = kDefaultMaxWindowLength,
                                            double overlap = kDefaultWindowOverlap) {
  if (!(overlap >= 0.0 && overlap < 1.0)) throw InvalidOverlap("overlap must lie in [0, 1)");
  if (total_features < 1) throw InvalidArgument("total_features must be positive");
  if (max_len < 1) throw InvalidArgument("max window length must be positive");

  if (total_features <= max_len) return {Window{0, total_features}};

  const auto stride = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::floor(static_cast<double>(max_len) * (1.0 - overlap))));
  std::vector<Window> windows;
  std::int64_t start = 0;
  while (start + max_len < total_features) {
    windows.push_back({start, max_len});
    start += stride;
  }
  const std::int64_t last = total_features - max_len;
  if (windows.back().start_feature != last) windows.push_back({last, max_len});
  return windows;
}

}  // namespace tadpost
