#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "tadpost/composition.hpp"

using namespace tadpost;

namespace {
StreamProposal stream(std::vector<double> scores, FeatureSpan b = {0, 10}) { return {b, std::move(scores), {}}; }
}  // namespace

TEST(TopK, OrderAndTies) {
  EXPECT_EQ(top_k(std::vector<double>{0.1, 0.7, 0.2}, 2), (std::vector<ScoredIndex>{{1, 0.7}, {2, 0.2}}));
  EXPECT_EQ(top_k(std::vector<double>{0.5, 0.5}, 1), (std::vector<ScoredIndex>{{0, 0.5}}));
  EXPECT_EQ(top_k(std::vector<double>{0.3}, 10), (std::vector<ScoredIndex>{{0, 0.3}}));
  EXPECT_THROW(top_k(std::vector<double>{0.3}, 0), InvalidArgument);
}

TEST(ActionId, EncodeDecode) {
  EXPECT_EQ(encode_action_id(5, 2), 605);
  EXPECT_EQ(decode_action_id(605), (NounVerb{5, 2}));
  EXPECT_EQ(decode_action_id(0), (NounVerb{0, 0}));
  EXPECT_EQ(decode_action_id(29099), (NounVerb{299, 96}));
  EXPECT_THROW(decode_action_id(29100), ActionIdOutOfRange);
  EXPECT_THROW(decode_action_id(-1), ActionIdOutOfRange);
  EXPECT_THROW(encode_action_id(300, 0), ActionIdOutOfRange);
}

TEST(ActionId, BijectiveOnSmallVocab) {
  const VocabSpec v{7, 3};
  for (ActionId a = 0; a < v.action_count(); ++a) {
    const auto nv = decode_action_id(a, v);
    ASSERT_EQ(encode_action_id(nv.noun, nv.verb, v), a);
  }
}

TEST(Compose, GeometricMeanScore) {
  std::vector<double> noun(300, 0.0), verb(97, 0.0);
  noun[5] = 0.9;
  verb[2] = 0.4;
  const auto c = compose_actions(stream(noun), stream(verb));
  ASSERT_EQ(c.size(), 100u);
  EXPECT_EQ(c[0].noun, 5);
  EXPECT_EQ(c[0].verb, 2);
  EXPECT_EQ(c[0].action_id, 605);
  EXPECT_NEAR(c[0].score, 0.6, 1e-15);
}

TEST(Compose, TwoByTwoEnumeration) {
  const VocabSpec v{2, 2};
  const auto c = compose_actions(stream({0.9, 0.1}, {10, 20}), stream({0.8, 0.2}, {14, 24}), 2, 2, v);
  ASSERT_EQ(c.size(), 4u);
  // Brute force: every (noun, verb) product, sorted descending.
  std::vector<std::pair<double, std::pair<int, int>>> expected;
  const double pn[] = {0.9, 0.1}, pv[] = {0.8, 0.2};
  for (int n = 0; n < 2; ++n)
    for (int q = 0; q < 2; ++q) expected.push_back({std::sqrt(pn[n] * pv[q]), {n, q}});
  std::sort(expected.begin(), expected.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(c[i].score, expected[i].first);
    EXPECT_EQ(c[i].noun, expected[i].second.first);
    EXPECT_EQ(c[i].verb, expected[i].second.second);
    EXPECT_EQ(c[i].noun_boundary, (FeatureSpan{10, 20}));
    EXPECT_EQ(c[i].verb_boundary, (FeatureSpan{14, 24}));
  }
  EXPECT_NEAR(c[0].score, 0.84852813742385702928, 1e-15);
  EXPECT_NEAR(c[1].score, 0.42426406871192851464, 1e-15);
  EXPECT_NEAR(c[2].score, 0.28284271247461900976, 1e-15);
  EXPECT_NEAR(c[3].score, 0.14142135623730950488, 1e-15);
  // (noun 0, verb 1) ranks above (noun 1, verb 0)
  EXPECT_EQ(c[1].verb, 1);
  EXPECT_EQ(c[2].noun, 1);
}

TEST(Compose, CandidateCountAndInvariants) {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> noun(300), verb(97);
    for (double& x : noun) x = u(rng);
    for (double& x : verb) x = u(rng);
    const auto c = compose_actions(stream(noun), stream(verb));
    ASSERT_EQ(c.size(), 100u);
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto& a = c[i];
      ASSERT_EQ(a.action_id, 300 * a.verb + a.noun);
      ASSERT_NEAR(a.score, std::sqrt(noun[a.noun] * verb[a.verb]), 1e-12);
      // ranking by S agrees with ranking by the product
      if (i > 0) { ASSERT_GE(noun[c[i - 1].noun] * verb[c[i - 1].verb], noun[a.noun] * verb[a.verb]); }
    }
  }
  const VocabSpec small{3, 2};
  EXPECT_EQ(compose_actions(stream({0.1, 0.2, 0.3}), stream({0.5, 0.6}), 10, 10, small).size(), 6u);
}

TEST(Compose, VocabularyMismatch) {
  EXPECT_THROW(compose_actions(stream({0.1, 0.2}), stream(std::vector<double>(97, 0.1))), VocabularyMismatch);
}
