#pragma once

#include <algorithm>
#include <compare>

namespace tadpost {

struct FeatureUnits {};
struct Seconds {};

// Half-open temporal extent [start, end). The Unit tag keeps feature-grid
// coordinates and wall-clock seconds from being mixed by accident.
template <typename Unit>
struct BasicInterval {
  double start = 0.0;
  double end = 0.0;

  constexpr double length() const noexcept { return end - start; }
  constexpr bool valid() const noexcept { return start < end; }

  friend constexpr bool operator==(const BasicInterval&, const BasicInterval&) = default;
};

using FeatureSpan = BasicInterval<FeatureUnits>;
using TimeSpan = BasicInterval<Seconds>;

// |a ∩ b| / |a ∪ b|, zero for disjoint or touching intervals.
template <typename Unit>
constexpr double temporal_iou(const BasicInterval<Unit>& a, const BasicInterval<Unit>& b) noexcept {
  const double inter = std::max(0.0, std::min(a.end, b.end) - std::max(a.start, b.start));
  if (inter <= 0.0) return 0.0;
  const double uni = a.length() + b.length() - inter;
  return uni > 0.0 ? inter / uni : 0.0;
}

}  // namespace tadpost
