#include <gtest/gtest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "tadpost/timeline.hpp"

using namespace tadpost;

TEST(Timeline, DefaultGridCarriesFeatureConstants) {
  const FeatureGrid g;
  EXPECT_EQ(g.stride_frames, 8);
  EXPECT_EQ(g.offset_frames, 4);
  EXPECT_EQ(g.fps, (FrameRate{30, 1}));
  EXPECT_EQ(g.window_start_frame, 0);
}

TEST(Timeline, FeatureIndexToSeconds) {
  const FeatureGrid g;
  EXPECT_NEAR(feature_index_to_seconds(0, g), 4.0 / 30.0, 1e-12);
  EXPECT_NEAR(feature_index_to_seconds(30, g), 244.0 / 30.0, 1e-12);
  const FeatureGrid coarse{16, 8, {30, 1}, 0};
  EXPECT_NEAR(feature_index_to_seconds(1, coarse), 0.8, 1e-12);
}

TEST(Timeline, RationalFrameRate) {
  const FeatureGrid ntsc{8, 4, {30000, 1001}, 0};
  EXPECT_NEAR(feature_index_to_seconds(0, ntsc), 4.0 * 1001.0 / 30000.0, 1e-15);
}

TEST(Timeline, BoundaryToSeconds) {
  const FeatureGrid g;
  auto t = boundary_to_seconds({0, 10}, g);
  EXPECT_NEAR(t.start, 4.0 / 30.0, 1e-12);
  EXPECT_NEAR(t.end, 2.8, 1e-12);

  t = boundary_to_seconds({0, 10}, FeatureGrid{8, 4, {30, 1}, 2304});
  EXPECT_NEAR(t.start, 76.93333333333333, 1e-9);
  EXPECT_NEAR(t.end, 79.6, 1e-9);

  EXPECT_THROW(boundary_to_seconds({5, 5}, g), DegenerateInterval);
  EXPECT_THROW(boundary_to_seconds({6, 5}, g), DegenerateInterval);
}

TEST(Timeline, NegativeCoordinatesClampToWindowOrigin) {
  const FeatureGrid g;
  const auto t = boundary_to_seconds({-3.5, 2}, g);
  EXPECT_DOUBLE_EQ(t.start, feature_index_to_seconds(0, g));
  EXPECT_THROW(boundary_to_seconds({-3, -1}, g), DegenerateInterval);
}

TEST(Timeline, AtWindowUsesFeatureStride) {
  EXPECT_EQ(FeatureGrid{}.at_window(288).window_start_frame, 2304);
}

TEST(Timeline, SecondsToBoundaryInvertsConversion) {
  const FeatureGrid g{8, 4, {30, 1}, 800};
  const FeatureSpan b{3.25, 17.5};
  const auto back = seconds_to_boundary(boundary_to_seconds(b, g), g);
  EXPECT_NEAR(back.start, b.start, 1e-12);
  EXPECT_NEAR(back.end, b.end, 1e-12);
}

TEST(Timeline, StartOfUnitBoundaryMatchesFeatureCentre) {
  const FeatureGrid g;
  for (std::int64_t i = 0; i < 5000; i += 7) {
    const auto t = boundary_to_seconds({static_cast<double>(i), static_cast<double>(i + 1)}, g);
    ASSERT_EQ(t.start, feature_index_to_seconds(i, g)) << i;
  }
}

TEST(Timeline, ConversionIsStrictlyMonotone) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 5000.0);
  const FeatureGrid g{8, 4, {30, 1}, 160};
  for (int i = 0; i < 2000; ++i) {
    double a = u(rng), b = u(rng);
    if (a == b) continue;
    if (a > b) std::swap(a, b);
    const auto t = boundary_to_seconds({a, b}, g);
    ASSERT_LT(t.start, t.end);
  }
}

TEST(Windows, ShortAndExactSequencesUseOneWindow) {
  EXPECT_EQ(generate_windows(4608), (std::vector<Window>{{0, 4608}}));
  EXPECT_EQ(generate_windows(100), (std::vector<Window>{{0, 100}}));
  EXPECT_EQ(generate_windows(1), (std::vector<Window>{{0, 1}}));
}

TEST(Windows, LastWindowShiftsLeft) {
  const auto w = generate_windows(6000);
  ASSERT_EQ(w, (std::vector<Window>{{0, 4608}, {1392, 4608}}));
  const auto hits = oracle::coverage_counts(6000, {{0, 4608}, {1392, 4608}});
  EXPECT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h >= 1; }));
  // neighbours overlap by at least half a window
  EXPECT_GE(w[0].end_feature() - w[1].start_feature, 4608 / 2);
}

TEST(Windows, RejectsBadOverlap) {
  EXPECT_THROW(generate_windows(100, 4608, 1.0), InvalidOverlap);
  EXPECT_THROW(generate_windows(100, 4608, -0.1), InvalidOverlap);
  EXPECT_THROW(generate_windows(0), InvalidArgument);
}

TEST(Windows, CoverageProperty) {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> total_law(1, 3000);
  std::uniform_int_distribution<std::int64_t> len_law(1, 400);
  std::uniform_real_distribution<double> overlap_law(0.0, 0.95);
  for (int trial = 0; trial < 300; ++trial) {
    const auto total = total_law(rng);
    const auto max_len = len_law(rng);
    const double overlap = overlap_law(rng);
    const auto windows = generate_windows(total, max_len, overlap);
    std::vector<std::pair<std::int64_t, std::int64_t>> spans;
    for (std::size_t i = 0; i < windows.size(); ++i) {
      const auto& w = windows[i];
      ASSERT_GE(w.start_feature, 0);
      ASSERT_LE(w.end_feature(), total);
      ASSERT_LE(w.length_features, max_len);
      if (total >= max_len) { ASSERT_EQ(w.length_features, max_len); }
      if (i > 0) { ASSERT_GE(w.start_feature, windows[i - 1].start_feature); }
      spans.emplace_back(w.start_feature, w.length_features);
    }
    ASSERT_EQ(windows.back().end_feature(), total);
    const auto hits = oracle::coverage_counts(total, spans);
    ASSERT_TRUE(std::all_of(hits.begin(), hits.end(), [](int h) { return h >= 1; }))
        << "total=" << total << " max_len=" << max_len << " overlap=" << overlap;
  }
}
