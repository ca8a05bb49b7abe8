#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tadpost/composition.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/fusion.hpp"
#include "tadpost/io/text.hpp"
#include "tadpost/simulation.hpp"
#include "tadpost/suppression.hpp"
#include "tadpost/timeline.hpp"

namespace tadpost::io {

// Everything the CLI needs. Defaults are the challenge-submission settings.
struct PipelineConfig {
  FeatureGrid grid{};
  std::int64_t max_window_length = kDefaultMaxWindowLength;
  double overlap = kDefaultWindowOverlap;
  std::size_t top_k_noun = kDefaultNounTopK;
  std::size_t top_k_verb = kDefaultVerbTopK;
  double epsilon = kDefaultFusionEpsilon;
  FusionMode fusion_mode = FusionMode::dwf;
  NmsPreset nms_preset = NmsPreset::verb_action;
  NmsConfig noun_nms = noun_nms_preset();
  NmsConfig verb_action_nms = verb_action_nms_preset();
  VocabSpec vocab{};
  std::string submission_version = "0.2";
  std::vector<double> eval_thresholds{0.1, 0.2, 0.3, 0.4, 0.5};
  ScenarioConfig simulation{};

  const NmsConfig& active_nms() const noexcept {
    return nms_preset == NmsPreset::noun ? noun_nms : verb_action_nms;
  }

  EvalConfig eval_config() const { return {eval_thresholds, ClassKey::action, vocab}; }
};

namespace detail {

template <typename T>
T require_number(std::string_view key, std::string_view value) {
  const auto parsed = parse_number<T>(value);
  if (!parsed) throw ParseError("cannot parse '" + std::string(value) + "' as a number", std::string(key));
  return *parsed;
}

inline void require(bool ok, std::string_view key, const char* what) {
  if (!ok) throw ParseError(what, std::string(key));
}

inline FrameRate parse_frame_rate(std::string_view key, std::string_view value) {
  const auto parts = split(value, '/');
  require(parts.size() <= 2, key, "fps must be N or N/D");
  FrameRate r{require_number<std::int64_t>(key, parts[0]), 1};
  if (parts.size() == 2) r.den = require_number<std::int64_t>(key, parts[1]);
  require(r.num > 0 && r.den > 0, key, "fps must be positive");
  return r;
}

using Setter = std::function<void(PipelineConfig&, std::string_view key, std::string_view value)>;

inline Setter positive_size(std::size_t PipelineConfig::*field) {
  return [field](PipelineConfig& c, std::string_view k, std::string_view v) {
    const auto n = require_number<std::int64_t>(k, v);
    require(n >= 1, k, "must be a positive integer");
    c.*field = static_cast<std::size_t>(n);
  };
}

inline void set_caps(PipelineConfig& c, std::size_t NmsConfig::*field, std::string_view k, std::string_view v) {
  const auto n = require_number<std::int64_t>(k, v);
  require(n >= 1, k, "must be a positive integer");
  c.noun_nms.*field = static_cast<std::size_t>(n);
  c.verb_action_nms.*field = static_cast<std::size_t>(n);
}

inline Setter nms_sigma(NmsConfig PipelineConfig::*preset) {
  return [preset](PipelineConfig& c, std::string_view k, std::string_view v) {
    const double x = require_number<double>(k, v);
    require(x > 0.0, k, "sigma must be positive");
    (c.*preset).sigma = x;
  };
}

inline Setter nms_min_score(NmsConfig PipelineConfig::*preset) {
  return [preset](PipelineConfig& c, std::string_view k, std::string_view v) {
    const double x = require_number<double>(k, v);
    require(x >= 0.0, k, "min score must be non-negative");
    (c.*preset).min_score = x;
  };
}

inline Setter nms_vote(NmsConfig PipelineConfig::*preset) {
  return [preset](PipelineConfig& c, std::string_view k, std::string_view v) {
    const double x = require_number<double>(k, v);
    require(x > 0.0 && x <= 1.0, k, "vote threshold must lie in (0, 1]");
    (c.*preset).vote_threshold = x;
  };
}

inline Setter sim_real(double ScenarioConfig::*field, bool allow_zero) {
  return [field, allow_zero](PipelineConfig& c, std::string_view k, std::string_view v) {
    const double x = require_number<double>(k, v);
    require(allow_zero ? x >= 0.0 : x > 0.0, k, allow_zero ? "must be non-negative" : "must be positive");
    c.simulation.*field = x;
  };
}

inline Setter sim_count(std::size_t ScenarioConfig::*field) {
  return [field](PipelineConfig& c, std::string_view k, std::string_view v) {
    const auto n = require_number<std::int64_t>(k, v);
    require(n >= 1, k, "must be a positive integer");
    c.simulation.*field = static_cast<std::size_t>(n);
  };
}

inline const std::map<std::string, Setter, std::less<>>& config_setters() {
  static const std::map<std::string, Setter, std::less<>> setters = {
      {"stride_frames",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         c.grid.stride_frames = require_number<std::int64_t>(k, v);
         require(c.grid.stride_frames >= 1, k, "stride must be >= 1");
       }},
      {"offset_frames",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         c.grid.offset_frames = require_number<std::int64_t>(k, v);
         require(c.grid.offset_frames >= 0, k, "offset must be >= 0");
       }},
      {"fps", [](PipelineConfig& c, std::string_view k, std::string_view v) { c.grid.fps = parse_frame_rate(k, v); }},
      {"max_window_length",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         c.max_window_length = require_number<std::int64_t>(k, v);
         require(c.max_window_length >= 1, k, "window length must be positive");
       }},
      {"overlap",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         c.overlap = require_number<double>(k, v);
         require(c.overlap >= 0.0 && c.overlap < 1.0, k, "overlap must lie in [0, 1)");
       }},
      {"top_k_noun", positive_size(&PipelineConfig::top_k_noun)},
      {"top_k_verb", positive_size(&PipelineConfig::top_k_verb)},
      {"epsilon",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         c.epsilon = require_number<double>(k, v);
         require(c.epsilon > 0.0, k, "epsilon must be positive");
       }},
      {"fusion_mode",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         require(v == "dwf" || v == "mean", k, "expected dwf or mean");
         c.fusion_mode = parse_fusion_mode(v);
       }},
      {"nms_preset",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         require(v == "noun" || v == "verb_action", k, "expected noun or verb_action");
         c.nms_preset = parse_nms_preset(v);
       }},
      {"pre_nms_cap", [](PipelineConfig& c, std::string_view k,
                         std::string_view v) { set_caps(c, &NmsConfig::pre_nms_cap, k, v); }},
      {"max_per_video", [](PipelineConfig& c, std::string_view k,
                           std::string_view v) { set_caps(c, &NmsConfig::max_per_video, k, v); }},
      {"noun_nms_sigma", nms_sigma(&PipelineConfig::noun_nms)},
      {"noun_nms_min_score", nms_min_score(&PipelineConfig::noun_nms)},
      {"noun_nms_vote_threshold", nms_vote(&PipelineConfig::noun_nms)},
      {"verb_action_nms_sigma", nms_sigma(&PipelineConfig::verb_action_nms)},
      {"verb_action_nms_min_score", nms_min_score(&PipelineConfig::verb_action_nms)},
      {"verb_action_nms_vote_threshold", nms_vote(&PipelineConfig::verb_action_nms)},
      {"noun_count",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         c.vocab.noun_count = require_number<int>(k, v);
         require(c.vocab.noun_count >= 1, k, "must be positive");
         c.simulation.vocab = c.vocab;
       }},
      {"verb_count",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         c.vocab.verb_count = require_number<int>(k, v);
         require(c.vocab.verb_count >= 1, k, "must be positive");
         c.simulation.vocab = c.vocab;
       }},
      {"submission_version",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         require(!v.empty() && v.find('"') == std::string_view::npos, k, "version must be a plain non-empty string");
         c.submission_version = std::string(v);
       }},
      {"eval_thresholds",
       [](PipelineConfig& c, std::string_view k, std::string_view v) {
         std::vector<double> ts;
         for (auto part : split(v, ',')) ts.push_back(require_number<double>(k, part));
         require(!ts.empty(), k, "at least one threshold required");
         for (std::size_t i = 0; i < ts.size(); ++i) {
           require(ts[i] > 0.0 && ts[i] <= 1.0, k, "thresholds must lie in (0, 1]");
           require(i == 0 || ts[i] > ts[i - 1], k, "thresholds must be strictly increasing");
         }
         c.eval_thresholds = std::move(ts);
       }},
      {"seed", [](PipelineConfig& c, std::string_view k,
                  std::string_view v) { c.simulation.seed = require_number<std::uint64_t>(k, v); }},
      {"sim_num_segments", sim_count(&ScenarioConfig::num_segments)},
      {"sim_num_videos", sim_count(&ScenarioConfig::num_videos)},
      {"sim_video_length", sim_real(&ScenarioConfig::video_length_s, false)},
      {"sim_min_duration", sim_real(&ScenarioConfig::min_duration_s, false)},
      {"sim_max_duration", sim_real(&ScenarioConfig::max_duration_s, false)},
      {"sim_confidence_lo", sim_real(&ScenarioConfig::confidence_lo, true)},
      {"sim_confidence_hi", sim_real(&ScenarioConfig::confidence_hi, true)},
      {"sim_sigma_min", sim_real(&ScenarioConfig::sigma_min, true)},
      {"sim_sigma_max", sim_real(&ScenarioConfig::sigma_max, true)},
  };
  return setters;
}

}  // namespace detail

// `key = value` lines, `#` starts a comment. Unknown or repeated keys are
// rejected; anything not mentioned keeps its default.
inline PipelineConfig parse_config_text(std::string_view text) {
  PipelineConfig cfg;
  std::set<std::string, std::less<>> seen;
  const auto& setters = detail::config_setters();
  for_each_content_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected 'key = value'", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    const auto it = setters.find(key);
    if (it == setters.end()) throw UnknownKey("unknown configuration key '" + std::string(key) + "'");
    if (!seen.insert(std::string(key)).second) throw ParseError("key given more than once", std::string(key));
    it->second(cfg, key, value);
  });
  try {
    cfg.simulation.validate();
  } catch (const InvalidConfig& e) {
    throw ParseError(e.what(), std::string("sim_*"));
  }
  return cfg;
}

inline PipelineConfig parse_config(const std::string& path) { return parse_config_text(read_file(path)); }

inline std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [k, _] : detail::config_setters()) keys.push_back(k);
  return keys;
}

}  // namespace tadpost::io
