#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "tadpost/composition.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/interval.hpp"

namespace tadpost {

inline constexpr std::size_t kDefaultPreNmsCap = 5000;
inline constexpr std::size_t kDefaultMaxPerVideo = 3000;

struct NmsConfig {
  double sigma = 0.4;
  double min_score = 0.001;
  double vote_threshold = 0.75;
  std::size_t pre_nms_cap = kDefaultPreNmsCap;
  std::size_t max_per_video = kDefaultMaxPerVideo;

  void validate() const {
    if (!(sigma > 0.0)) throw InvalidConfig("soft-nms sigma must be positive");
    if (!(min_score >= 0.0)) throw InvalidConfig("soft-nms min score must be non-negative");
    if (!(vote_threshold > 0.0 && vote_threshold <= 1.0)) throw InvalidConfig("vote threshold must lie in (0, 1]");
    if (pre_nms_cap < 1 || max_per_video < 1) throw InvalidConfig("candidate caps must be positive");
  }
  friend bool operator==(const NmsConfig&, const NmsConfig&) = default;
};

inline constexpr NmsConfig noun_nms_preset() noexcept { return {0.6, 0.005, 0.65}; }
inline constexpr NmsConfig verb_action_nms_preset() noexcept { return {0.4, 0.001, 0.75}; }

enum class NmsPreset { noun, verb_action };

inline NmsPreset parse_nms_preset(std::string_view name) {
  if (name == "noun") return NmsPreset::noun;
  if (name == "verb_action") return NmsPreset::verb_action;
  throw InvalidArgument("unknown nms preset '" + std::string(name) + "' (expected noun or verb_action)");
}

constexpr std::string_view to_string(NmsPreset p) noexcept { return p == NmsPreset::noun ? "noun" : "verb_action"; }

// A composed, fused detection in seconds.
struct ActionDetection {
  std::string video_id;
  TimeSpan interval;
  int verb = 0;
  int noun = 0;
  ActionId action_id = 0;
  double score = 0.0;

  friend bool operator==(const ActionDetection&, const ActionDetection&) = default;
};

enum class ClassKey { verb, noun, action };

inline std::string_view to_string(ClassKey k) noexcept {
  switch (k) {
    case ClassKey::verb: return "verb";
    case ClassKey::noun: return "noun";
    case ClassKey::action: return "action";
  }
  return "action";
}

inline std::int64_t class_of(const ActionDetection& d, ClassKey key) noexcept {
  switch (key) {
    case ClassKey::verb: return d.verb;
    case ClassKey::noun: return d.noun;
    case ClassKey::action: return d.action_id;
  }
  return d.action_id;
}

// Deterministic ranking: score desc, earlier start, smaller action id, then
// the remaining fields so that equal-looking records still order stably.
inline bool ranks_before(const ActionDetection& a, const ActionDetection& b) noexcept {
  if (a.score != b.score) return a.score > b.score;
  if (a.interval.start != b.interval.start) return a.interval.start < b.interval.start;
  if (a.action_id != b.action_id) return a.action_id < b.action_id;
  if (a.interval.end != b.interval.end) return a.interval.end < b.interval.end;
  return a.video_id < b.video_id;
}

inline void sort_detections(std::vector<ActionDetection>& dets) {
  std::stable_sort(dets.begin(), dets.end(), ranks_before);
}

// Score-weighted average of the kept interval and every neighbour overlapping
// it by at least vote_threshold. Weights are whatever scores the caller
// passes; soft-NMS passes pre-decay scores.
inline ActionDetection boundary_vote(const ActionDetection& kept, const std::vector<ActionDetection>& neighbors,
                                     double vote_threshold) {
  double weight = kept.score;
  double start_shift = 0.0;
  double end_shift = 0.0;
  for (const auto& n : neighbors) {
    if (temporal_iou(kept.interval, n.interval) < vote_threshold) continue;
    weight += n.score;
    start_shift += n.score * (n.interval.start - kept.interval.start);
    end_shift += n.score * (n.interval.end - kept.interval.end);
  }
  ActionDetection out = kept;
  if (weight > 0.0) out.interval = {kept.interval.start + start_shift / weight, kept.interval.end + end_shift / weight};
  return out;
}

enum class Voting { off, on };

// Gaussian Soft-NMS over detections of a single class in a single video:
// repeatedly keep the top-ranked detection and decay every remaining one by
// exp(-tIoU^2 / sigma); anything that falls below min_score is dropped.
// With voting on, each kept interval is refined by boundary_vote over the
// candidates still alive in its round, using their original scores.
inline std::vector<ActionDetection> soft_nms(const std::vector<ActionDetection>& dets, const NmsConfig& cfg,
                                             Voting voting = Voting::off) {
  cfg.validate();
  struct Entry {
    ActionDetection det;
    double original;
  };
  std::vector<Entry> pool;
  pool.reserve(dets.size());
  for (const auto& d : dets)
    if (d.score >= cfg.min_score) pool.push_back({d, d.score});

  std::vector<ActionDetection> kept;
  std::vector<ActionDetection> round;
  while (!pool.empty() && kept.size() < cfg.max_per_video) {
    auto top = std::min_element(pool.begin(), pool.end(),
                                [](const Entry& a, const Entry& b) { return ranks_before(a.det, b.det); });
    Entry chosen = std::move(*top);
    pool.erase(top);

    ActionDetection out = chosen.det;
    if (voting == Voting::on) {
      round.clear();
      for (const auto& e : pool) {
        round.push_back(e.det);
        round.back().score = e.original;
      }
      ActionDetection voter = chosen.det;
      voter.score = chosen.original;
      out.interval = boundary_vote(voter, round, cfg.vote_threshold).interval;
    }

    for (auto& e : pool) {
      const double iou = temporal_iou(chosen.det.interval, e.det.interval);
      e.det.score *= std::exp(-(iou * iou) / cfg.sigma);
    }
    std::erase_if(pool, [&](const Entry& e) { return e.det.score < cfg.min_score; });
    kept.push_back(std::move(out));
  }
  sort_detections(kept);
  return kept;
}

// Class-wise suppression of one video's pooled candidates: global score cap,
// Soft-NMS with voting inside each class, then the per-video cap.
inline std::vector<ActionDetection> suppress_video(std::vector<ActionDetection> dets, const NmsConfig& cfg,
                                                   ClassKey key = ClassKey::action) {
  cfg.validate();
  sort_detections(dets);
  if (dets.size() > cfg.pre_nms_cap) dets.resize(cfg.pre_nms_cap);

  std::map<std::int64_t, std::vector<ActionDetection>> by_class;
  for (auto& d : dets) by_class[class_of(d, key)].push_back(std::move(d));

  std::vector<ActionDetection> out;
  for (const auto& [cls, group] : by_class) {
    auto kept = soft_nms(group, cfg, Voting::on);
    out.insert(out.end(), std::make_move_iterator(kept.begin()), std::make_move_iterator(kept.end()));
  }
  sort_detections(out);
  if (out.size() > cfg.max_per_video) out.resize(cfg.max_per_video);
  return out;
}

}  // namespace tadpost
