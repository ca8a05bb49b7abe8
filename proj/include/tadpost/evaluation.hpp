#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tadpost/composition.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/interval.hpp"
#include "tadpost/suppression.hpp"

namespace tadpost {

struct GroundTruthInstance {
  std::string video_id;
  TimeSpan interval;
  int verb = 0;
  int noun = 0;

  friend bool operator==(const GroundTruthInstance&, const GroundTruthInstance&) = default;
};

struct EvalConfig {
  std::vector<double> thresholds{0.1, 0.2, 0.3, 0.4, 0.5};
  ClassKey task = ClassKey::action;
  VocabSpec vocab{};

  void validate() const {
    if (thresholds.empty()) throw InvalidConfig("at least one tIoU threshold is required");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
      if (!(thresholds[i] > 0.0 && thresholds[i] <= 1.0)) throw InvalidConfig("tIoU thresholds must lie in (0, 1]");
      if (i > 0 && !(thresholds[i] > thresholds[i - 1])) throw InvalidConfig("tIoU thresholds must increase");
    }
  }
};

inline std::int64_t class_of(const GroundTruthInstance& g, ClassKey key, const VocabSpec& vocab = {}) {
  switch (key) {
    case ClassKey::verb: return g.verb;
    case ClassKey::noun: return g.noun;
    case ClassKey::action: return encode_action_id(g.noun, g.verb, vocab);
  }
  return encode_action_id(g.noun, g.verb, vocab);
}

// Greedy one-to-one matching. `dets` must already be in ranking order. Each
// detection takes the unmatched same-class, same-video ground truth with the
// highest tIoU (earliest on ties) when that tIoU reaches tau.
inline std::vector<bool> match_detections(std::span<const ActionDetection> dets,
                                          std::span<const GroundTruthInstance> gts, double tau, ClassKey key,
                                          const VocabSpec& vocab = {}) {
  std::unordered_map<std::string, std::vector<std::size_t>> gts_by_video;
  std::vector<std::int64_t> gt_class(gts.size());
  for (std::size_t g = 0; g < gts.size(); ++g) {
    gts_by_video[gts[g].video_id].push_back(g);
    gt_class[g] = class_of(gts[g], key, vocab);
  }
  std::vector<bool> matched(gts.size(), false);
  std::vector<bool> flags;
  flags.reserve(dets.size());
  for (const auto& d : dets) {
    const std::int64_t cls = class_of(d, key);
    double best_iou = -1.0;
    std::size_t best = gts.size();
    if (auto it = gts_by_video.find(d.video_id); it != gts_by_video.end()) {
      for (std::size_t g : it->second) {
        if (matched[g] || gt_class[g] != cls) continue;
        const double iou = temporal_iou(d.interval, gts[g].interval);
        if (iou > best_iou) {
          best_iou = iou;
          best = g;
        }
      }
    }
    const bool tp = best < gts.size() && best_iou >= tau;
    if (tp) matched[best] = true;
    flags.push_back(tp);
  }
  return flags;
}

// Area under the precision-envelope PR curve. Zero when num_gt is zero.
inline double average_precision(const std::vector<bool>& flags, std::size_t num_gt) {
  if (num_gt == 0 || flags.empty()) return 0.0;
  const auto total = static_cast<double>(num_gt);
  std::vector<double> precision(flags.size());
  std::vector<double> recall(flags.size());
  std::size_t tp = 0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) ++tp;
    precision[i] = static_cast<double>(tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(tp) / total;
  }
  for (std::size_t i = flags.size() - 1; i > 0; --i) precision[i - 1] = std::max(precision[i - 1], precision[i]);
  double ap = 0.0;
  double previous_recall = 0.0;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (!flags[i]) continue;
    ap += (recall[i] - previous_recall) * precision[i];
    previous_recall = recall[i];
  }
  return ap;
}

struct MapResult {
  std::vector<double> thresholds;
  std::vector<double> map;  // one entry per threshold
  double average = 0.0;
};

// Per-class AP averaged over classes that have ground truth, for each
// threshold, then averaged over thresholds.
inline MapResult mean_ap(std::vector<ActionDetection> dets, std::span<const GroundTruthInstance> gts,
                         const EvalConfig& cfg) {
  cfg.validate();
  sort_detections(dets);

  std::map<std::int64_t, std::vector<GroundTruthInstance>> gt_by_class;
  for (const auto& g : gts) gt_by_class[class_of(g, cfg.task, cfg.vocab)].push_back(g);
  std::unordered_map<std::int64_t, std::vector<ActionDetection>> det_by_class;
  for (auto& d : dets)
    if (gt_by_class.contains(class_of(d, cfg.task))) det_by_class[class_of(d, cfg.task)].push_back(std::move(d));

  MapResult result;
  result.thresholds = cfg.thresholds;
  for (double tau : cfg.thresholds) {
    double sum = 0.0;
    for (const auto& [cls, class_gts] : gt_by_class) {
      const auto it = det_by_class.find(cls);
      if (it == det_by_class.end()) continue;
      const auto flags = match_detections(it->second, class_gts, tau, cfg.task, cfg.vocab);
      sum += average_precision(flags, class_gts.size());
    }
    result.map.push_back(gt_by_class.empty() ? 0.0 : sum / static_cast<double>(gt_by_class.size()));
  }
  double total = 0.0;
  for (double m : result.map) total += m;
  result.average = total / static_cast<double>(result.map.size());
  return result;
}

// mAP for verb, noun and action from one set of detections.
struct MetricsTable {
  MapResult verb;
  MapResult noun;
  MapResult action;
};

inline MetricsTable evaluate_all_tasks(const std::vector<ActionDetection>& dets,
                                       std::span<const GroundTruthInstance> gts, EvalConfig cfg) {
  MetricsTable table;
  cfg.task = ClassKey::verb;
  table.verb = mean_ap(dets, gts, cfg);
  cfg.task = ClassKey::noun;
  table.noun = mean_ap(dets, gts, cfg);
  cfg.task = ClassKey::action;
  table.action = mean_ap(dets, gts, cfg);
  return table;
}

}  // namespace tadpost
