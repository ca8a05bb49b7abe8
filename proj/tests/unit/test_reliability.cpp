#include <gtest/gtest.h>

#include <random>

#include "oracles/oracles.hpp"
#include "tadpost/reliability.hpp"

using namespace tadpost;

TEST(UncertaintyGate, MinMaxNormalisation) {
  const std::vector<double> u{0.2, 0.8, 0.5};
  const auto w = uncertainty_gate(u, 1e-15);
  EXPECT_NEAR(w[0], 1.0, 1e-12);
  EXPECT_NEAR(w[1], 0.0, 1e-12);
  EXPECT_NEAR(w[2], 0.5, 1e-12);
}

TEST(UncertaintyGate, ConstantSequenceIsFullyReliable) {
  for (double c : {0.0, 0.37, 1.0}) {
    const std::vector<double> u(4, c);
    for (double w : uncertainty_gate(u)) EXPECT_EQ(w, 1.0);
  }
}

TEST(UncertaintyGate, EpsilonRetained) {
  // 1 - 1/(1 + 1e-6), evaluated at 40 digits.
  const std::vector<double> u{0.0, 1.0};
  const auto w = uncertainty_gate(u, 1e-6);
  EXPECT_EQ(w[0], 1.0);
  EXPECT_NEAR(w[1], 9.99999000001e-7, 1e-18);
}

TEST(UncertaintyGate, Errors) {
  EXPECT_THROW(uncertainty_gate(std::vector<double>{}), EmptySequence);
  EXPECT_THROW(uncertainty_gate(std::vector<double>{1.0}, 0.0), InvalidArgument);
}

TEST(UncertaintyGate, BoundedAndAffineInvariant) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::uniform_real_distribution<double> alpha_law(0.1, 10.0);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> seq(1 + trial % 30);
    for (double& x : seq) x = u(rng);
    const double alpha = alpha_law(rng), beta = u(rng);
    std::vector<double> moved = seq;
    for (double& x : moved) x = alpha * x + beta;
    const auto a = uncertainty_gate(seq, 1e-12);
    const auto b = uncertainty_gate(moved, 1e-12);
    for (std::size_t i = 0; i < seq.size(); ++i) {
      ASSERT_GE(a[i], 0.0);
      ASSERT_LE(a[i], 1.0);
      ASSERT_NEAR(a[i], b[i], 1e-6);
    }
  }
}

TEST(ApplyGate, ScalesEachStep) {
  const auto g = apply_gate({{2, 4}}, std::vector<double>{0.5});
  EXPECT_EQ(g.features, (FeatureSequence{{1, 2}}));
  const FeatureSequence a{{1, -2}, {3, 4}};
  EXPECT_EQ(apply_gate(a, std::vector<double>{1, 1}).features, a);
  EXPECT_EQ(apply_gate(a, std::vector<double>{0, 0}).features, (FeatureSequence{{0, 0}, {0, 0}}));
  EXPECT_THROW(apply_gate(a, std::vector<double>{1}), LengthMismatch);
}

TEST(CrossWindowAttention, SingletonKey) {
  const FeatureSequence h{{1, 2}, {-3, 0.5}};
  const GatedSequence g{{{4, 5}}, {1.0}};
  const auto out = cross_window_attention(h, g, 0.7);
  EXPECT_EQ(out, (FeatureSequence{{5, 7}, {1, 5.5}}));
}

TEST(CrossWindowAttention, IdenticalValues) {
  const FeatureSequence h{{1, 0}, {0, 1}, {2, 2}};
  const GatedSequence g{{{0.5, -1}, {0.5, -1}, {0.5, -1}}, {1, 1, 1}};
  const auto out = cross_window_attention(h, g, 1.0);
  for (std::size_t t = 0; t < h.size(); ++t) {
    EXPECT_NEAR(out[t][0], h[t][0] + 0.5, 1e-12);
    EXPECT_NEAR(out[t][1], h[t][1] - 1.0, 1e-12);
  }
}

TEST(CrossWindowAttention, TwoByThreeAgainstHighPrecision) {
  const FeatureSequence h{{1, 0}, {0, 2}};
  const GatedSequence g{{{1, 1}, {2, -1}, {0, 3}}, {1, 1, 1}};
  const auto out = cross_window_attention(h, g, 1.0);
  // 40-digit evaluation of softmax(H A^T) A + H.
  EXPECT_NEAR(out[0][0], 2.5752103826044414315, 1e-12);
  EXPECT_NEAR(out[0][1], -0.15042076520888286306, 1e-12);
  EXPECT_NEAR(out[1][0], 0.01863892761345933112, 1e-12);
  EXPECT_NEAR(out[1][1], 4.9627221447730813378, 1e-12);
  const auto ref = oracle::attention(h, g.features, 1.0);
  for (std::size_t t = 0; t < 2; ++t)
    for (std::size_t d = 0; d < 2; ++d) EXPECT_NEAR(out[t][d], ref[t][d], 1e-12);
}

TEST(CrossWindowAttention, RowsSumToOneAndMatchOracle) {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> n(0.0, 1.5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t dim = 1 + trial % 6, tq = 1 + trial % 5, tk = 1 + (trial * 7) % 9;
    FeatureSequence h(tq, FeatureVector(dim)), a(tk, FeatureVector(dim));
    for (auto& v : h)
      for (double& x : v) x = n(rng);
    for (auto& v : a)
      for (double& x : v) x = n(rng);
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    for (const auto& row : attention_weights(h, a, scale)) {
      double s = 0.0;
      for (double w : row) s += w;
      ASSERT_NEAR(s, 1.0, 1e-9);
    }
    const auto out = cross_window_attention(h, GatedSequence{a, std::vector<double>(tk, 1.0)}, scale);
    const auto ref = oracle::attention(h, a, scale);
    for (std::size_t t = 0; t < tq; ++t)
      for (std::size_t d = 0; d < dim; ++d) ASSERT_NEAR(out[t][d], ref[t][d], 1e-10);
  }
}

TEST(CrossWindowAttention, ZeroGatedFeaturesLeaveMainUnchanged) {
  const FeatureSequence h{{0.25, -7}, {3, 1e-3}};
  const auto g = apply_gate({{9, 9}, {-4, 2}, {1, 1}}, std::vector<double>{0, 0, 0});
  EXPECT_EQ(cross_window_attention(h, g, 0.5), h);
}

TEST(CrossWindowAttention, Errors) {
  const FeatureSequence h{{1, 2}};
  EXPECT_THROW(cross_window_attention(h, GatedSequence{{{1, 2, 3}}, {1}}, 1.0), DimensionMismatch);
  EXPECT_THROW(cross_window_attention(h, GatedSequence{}, 1.0), EmptySequence);
  EXPECT_THROW(cross_window_attention(h, GatedSequence{{{1, 2}}, {1}}, 0.0), InvalidArgument);
}
