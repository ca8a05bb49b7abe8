#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tadpost/composition.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/io/text.hpp"
#include "tadpost/suppression.hpp"

namespace tadpost::io {

inline constexpr std::string_view kChallenge = "action_detection";

struct SubmissionDocument {
  std::string version = "0.2";
  std::string challenge{kChallenge};
  std::map<std::string, std::vector<ActionDetection>> results;  // keyed and emitted in video-id order

  std::size_t size() const noexcept {
    std::size_t n = 0;
    for (const auto& [_, dets] : results) n += dets.size();
    return n;
  }
  std::vector<ActionDetection> flatten() const {
    std::vector<ActionDetection> out;
    for (const auto& [_, dets] : results) out.insert(out.end(), dets.begin(), dets.end());
    return out;
  }
  friend bool operator==(const SubmissionDocument&, const SubmissionDocument&) = default;
};

inline std::string action_string(int verb, int noun) { return std::to_string(verb) + "," + std::to_string(noun); }

// Structural checks every emitted document satisfies.
inline void validate_submission(const SubmissionDocument& doc, std::size_t max_per_video = kDefaultMaxPerVideo) {
  for (const auto& [video, dets] : doc.results) {
    if (dets.size() > max_per_video) throw SchemaMismatch("video '" + video + "' exceeds the per-video cap");
    for (std::size_t i = 0; i < dets.size(); ++i) {
      const auto& d = dets[i];
      if (!(d.interval.start >= 0.0 && d.interval.start < d.interval.end))
        throw SchemaMismatch("video '" + video + "' has an invalid segment");
      if (i > 0 && dets[i - 1].score < d.score)
        throw SchemaMismatch("video '" + video + "' is not sorted by descending score");
    }
  }
}

// Deterministic JSON: fixed key order, one detection per line, times and
// scores with four fractional digits.
inline std::string serialize_submission(const SubmissionDocument& doc) {
  const auto quote = [](std::string_view s) { return nlohmann::json(std::string(s)).dump(); };
  std::string out = "{\n";
  out += "  \"version\": " + quote(doc.version) + ",\n";
  out += "  \"challenge\": " + quote(doc.challenge) + ",\n";
  out += "  \"results\": {";
  bool first_video = true;
  for (const auto& [video, dets] : doc.results) {
    out += first_video ? "\n" : ",\n";
    first_video = false;
    out += "    " + quote(video) + ": [";
    for (std::size_t i = 0; i < dets.size(); ++i) {
      const auto& d = dets[i];
      out += i == 0 ? "\n" : ",\n";
      out += "      {\"verb\": " + std::to_string(d.verb) + ", \"noun\": " + std::to_string(d.noun) +
             ", \"action\": \"" + action_string(d.verb, d.noun) + "\", \"segment\": [" +
             format_fixed(d.interval.start) + ", " + format_fixed(d.interval.end) +
             "], \"score\": " + format_fixed(d.score) + "}";
    }
    out += dets.empty() ? "]" : "\n    ]";
  }
  out += first_video ? "}\n" : "\n  }\n";
  out += "}\n";
  return out;
}

namespace detail {

inline const nlohmann::json& require_field(const nlohmann::json& obj, const char* key,
                                           nlohmann::json::value_t type) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw SchemaMismatch(std::string("missing field '") + key + "'");
  const bool numeric_ok = type == nlohmann::json::value_t::number_float && it->is_number();
  const bool integer_ok = type == nlohmann::json::value_t::number_integer && it->is_number_integer();
  if (!(it->type() == type || numeric_ok || integer_ok))
    throw SchemaMismatch(std::string("field '") + key + "' has the wrong type");
  return *it;
}

}  // namespace detail

inline SubmissionDocument parse_submission(std::string_view text, const VocabSpec& vocab = {}) {
  using vt = nlohmann::json::value_t;
  nlohmann::json root;
  try {
    root = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SchemaMismatch("submission must be a JSON object");
  SubmissionDocument doc;
  doc.version = detail::require_field(root, "version", vt::string).get<std::string>();
  doc.challenge = detail::require_field(root, "challenge", vt::string).get<std::string>();
  if (doc.challenge != kChallenge) throw SchemaMismatch("challenge must be '" + std::string(kChallenge) + "'");
  const auto& results = detail::require_field(root, "results", vt::object);
  for (const auto& [video, entries] : results.items()) {
    if (!entries.is_array()) throw SchemaMismatch("results for '" + video + "' must be an array");
    auto& dets = doc.results[video];
    for (const auto& e : entries) {
      if (!e.is_object()) throw SchemaMismatch("detection entries must be objects");
      ActionDetection d;
      d.video_id = video;
      d.verb = detail::require_field(e, "verb", vt::number_integer).get<int>();
      d.noun = detail::require_field(e, "noun", vt::number_integer).get<int>();
      const auto action = detail::require_field(e, "action", vt::string).get<std::string>();
      if (action != action_string(d.verb, d.noun))
        throw SchemaMismatch("action '" + action + "' disagrees with verb/noun fields");
      if (d.verb < 0 || d.verb >= vocab.verb_count || d.noun < 0 || d.noun >= vocab.noun_count)
        throw VocabularyMismatch("detection class " + action + " outside the vocabulary");
      d.action_id = encode_action_id(d.noun, d.verb, vocab);
      const auto& segment = detail::require_field(e, "segment", vt::array);
      if (segment.size() != 2 || !segment[0].is_number() || !segment[1].is_number())
        throw SchemaMismatch("segment must be [start, end]");
      d.interval = {segment[0].get<double>(), segment[1].get<double>()};
      if (!(d.interval.start < d.interval.end)) throw SchemaMismatch("segment start must precede end");
      d.score = detail::require_field(e, "score", vt::number_float).get<double>();
      dets.push_back(std::move(d));
    }
  }
  return doc;
}

}  // namespace tadpost::io
