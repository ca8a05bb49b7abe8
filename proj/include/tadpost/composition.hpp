#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tadpost/decode.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/interval.hpp"

namespace tadpost {

using ActionId = std::int64_t;

struct VocabSpec {
  int noun_count = 300;
  int verb_count = 97;

  constexpr ActionId action_count() const noexcept {
    return static_cast<ActionId>(noun_count) * static_cast<ActionId>(verb_count);
  }
  constexpr bool valid() const noexcept { return noun_count >= 1 && verb_count >= 1; }
  friend constexpr bool operator==(const VocabSpec&, const VocabSpec&) = default;
};

inline constexpr std::size_t kDefaultNounTopK = 10;
inline constexpr std::size_t kDefaultVerbTopK = 10;

struct ScoredIndex {
  int index = 0;
  double score = 0.0;
  friend constexpr bool operator==(const ScoredIndex&, const ScoredIndex&) = default;
};

// A noun-verb hypothesis for one aligned proposal pair.
struct ActionCandidate {
  int noun = 0;
  int verb = 0;
  ActionId action_id = 0;
  double score = 0.0;
  FeatureSpan noun_boundary;
  FeatureSpan verb_boundary;
};

// Flat action index, verb-major: noun_count * verb + noun.
inline ActionId encode_action_id(int noun, int verb, const VocabSpec& vocab = {}) {
  if (noun < 0 || noun >= vocab.noun_count || verb < 0 || verb >= vocab.verb_count)
    throw ActionIdOutOfRange("noun or verb index outside the vocabulary");
  return static_cast<ActionId>(vocab.noun_count) * verb + noun;
}

struct NounVerb {
  int noun = 0;
  int verb = 0;
  friend constexpr bool operator==(const NounVerb&, const NounVerb&) = default;
};

inline NounVerb decode_action_id(ActionId action_id, const VocabSpec& vocab = {}) {
  if (action_id < 0 || action_id >= vocab.action_count())
    throw ActionIdOutOfRange("action id " + std::to_string(action_id) + " outside [0, " +
                             std::to_string(vocab.action_count()) + ")");
  return {static_cast<int>(action_id % vocab.noun_count), static_cast<int>(action_id / vocab.noun_count)};
}

// The k largest entries, score desc with ties by ascending index.
inline std::vector<ScoredIndex> top_k(std::span<const double> scores, std::size_t k) {
  if (k == 0) throw InvalidArgument("top_k requires k >= 1");
  std::vector<ScoredIndex> all;
  all.reserve(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) all.push_back({static_cast<int>(i), scores[i]});
  const std::size_t keep = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(keep), all.end(),
                    [](const ScoredIndex& a, const ScoredIndex& b) {
                      return a.score != b.score ? a.score > b.score : a.index < b.index;
                    });
  all.resize(keep);
  return all;
}

// Cross product of the two streams' top classes. Each hypothesis is scored by
// the geometric mean of its factor probabilities and keeps both source
// boundaries for later fusion. Output is score desc, then action id asc.
inline std::vector<ActionCandidate> compose_actions(const StreamProposal& noun, const StreamProposal& verb,
                                                    std::size_t k_noun = kDefaultNounTopK,
                                                    std::size_t k_verb = kDefaultVerbTopK,
                                                    const VocabSpec& vocab = {}) {
  if (noun.scores.size() != static_cast<std::size_t>(vocab.noun_count) ||
      verb.scores.size() != static_cast<std::size_t>(vocab.verb_count))
    throw VocabularyMismatch("score vector length differs from the vocabulary size");
  const auto nouns = top_k(noun.scores, k_noun);
  const auto verbs = top_k(verb.scores, k_verb);
  std::vector<ActionCandidate> out;
  out.reserve(nouns.size() * verbs.size());
  for (const auto& n : nouns)
    for (const auto& v : verbs)
      out.push_back({n.index, v.index, encode_action_id(n.index, v.index, vocab), std::sqrt(n.score * v.score),
                     noun.boundary, verb.boundary});
  std::sort(out.begin(), out.end(), [](const ActionCandidate& a, const ActionCandidate& b) {
    return a.score != b.score ? a.score > b.score : a.action_id < b.action_id;
  });
  return out;
}

}  // namespace tadpost
