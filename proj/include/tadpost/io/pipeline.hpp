#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "tadpost/composition.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/evaluation.hpp"
#include "tadpost/fusion.hpp"
#include "tadpost/io/config.hpp"
#include "tadpost/io/records.hpp"
#include "tadpost/io/submission.hpp"
#include "tadpost/io/text.hpp"
#include "tadpost/suppression.hpp"
#include "tadpost/timeline.hpp"

namespace tadpost::io {

struct PipelineStats {
  std::size_t records = 0;
  std::size_t candidates = 0;        // composed hypotheses
  std::size_t below_min_score = 0;   // dropped before fusion
  std::size_t degenerate = 0;        // fused interval empty after clamping to the window origin
  std::size_t detections = 0;        // emitted after suppression
};

// Fused interval of one record, in seconds, plus the weights used.
struct FusedRecord {
  std::string video_id;
  TimeSpan interval;
  StreamConfidences confidences;
  double noun_weight = 0.5;
  double verb_weight = 0.5;
};

inline FusedRecord fuse_record(const ProposalRecord& r, const PipelineConfig& cfg) {
  const auto noun = densify(r.noun_scores, cfg.vocab.noun_count);
  const auto verb = densify(r.verb_scores, cfg.vocab.verb_count);
  FusedRecord out;
  out.video_id = r.video_id;
  out.confidences = stream_confidences(noun, verb);
  if (cfg.fusion_mode == FusionMode::dwf) {
    const auto w = dwf_weights(out.confidences, cfg.epsilon);
    out.noun_weight = w.noun_weight;
    out.verb_weight = w.verb_weight;
  }
  const auto fused = fuse(cfg.fusion_mode, r.noun_boundary, r.verb_boundary, out.confidences, cfg.epsilon);
  out.interval = boundary_to_seconds(fused, cfg.grid.at_window(r.window_start_feature));
  return out;
}

// compose -> score filter -> boundary fusion -> seconds -> class-wise Soft-NMS
// per video. Output is fully determined by the records and the config.
inline SubmissionDocument run_pipeline(const std::vector<ProposalRecord>& records, const PipelineConfig& cfg,
                                       PipelineStats* stats = nullptr) {
  PipelineStats local;
  PipelineStats& st = stats ? *stats : local;
  st = {};
  const NmsConfig& nms = cfg.active_nms();
  nms.validate();

  std::map<std::string, std::vector<ActionDetection>> by_video;
  for (const auto& r : records) {
    ++st.records;
    const StreamProposal noun{r.noun_boundary, densify(r.noun_scores, cfg.vocab.noun_count), {}};
    const StreamProposal verb{r.verb_boundary, densify(r.verb_scores, cfg.vocab.verb_count), {}};
    auto candidates = compose_actions(noun, verb, cfg.top_k_noun, cfg.top_k_verb, cfg.vocab);
    st.candidates += candidates.size();
    std::erase_if(candidates, [&](const ActionCandidate& c) {
      const bool drop = c.score < nms.min_score;
      st.below_min_score += drop;
      return drop;
    });
    auto& video = by_video[r.video_id];
    if (candidates.empty()) continue;

    TimeSpan interval;
    try {
      const auto c = stream_confidences(noun.scores, verb.scores);
      const auto fused = fuse(cfg.fusion_mode, r.noun_boundary, r.verb_boundary, c, cfg.epsilon);
      interval = boundary_to_seconds(fused, cfg.grid.at_window(r.window_start_feature));
    } catch (const DegenerateInterval&) {
      st.degenerate += candidates.size();
      continue;
    }
    for (const auto& c : candidates) video.push_back({r.video_id, interval, c.verb, c.noun, c.action_id, c.score});
  }

  SubmissionDocument doc;
  doc.version = cfg.submission_version;
  for (auto& [video, dets] : by_video) {
    auto kept = suppress_video(std::move(dets), nms, ClassKey::action);
    st.detections += kept.size();
    doc.results.emplace(video, std::move(kept));
  }
  return doc;
}

// Runs verb, noun and action evaluation of a parsed submission.
inline MetricsTable evaluate_submission(const SubmissionDocument& doc, const std::vector<GroundTruthInstance>& gts,
                                        const EvalConfig& cfg) {
  for (const auto& g : gts)
    if (g.verb >= cfg.vocab.verb_count || g.noun >= cfg.vocab.noun_count)
      throw VocabularyMismatch("ground-truth class " + action_string(g.verb, g.noun) + " outside the vocabulary");
  return evaluate_all_tasks(doc.flatten(), gts, cfg);
}

inline MetricsTable evaluate_files(const std::string& submission_path, const std::string& ground_truth_path,
                                   const EvalConfig& cfg) {
  const auto doc = parse_submission(read_file(submission_path), cfg.vocab);
  const auto gts = parse_ground_truth(read_file(ground_truth_path));
  return evaluate_submission(doc, gts, cfg);
}

namespace detail {
inline std::string threshold_label(double t) { return format_fixed(t, 2); }
}  // namespace detail

// Human-readable table in percent, one row per task.
inline std::string format_metrics_table(const MetricsTable& m) {
  std::string out = "task    ";
  for (double t : m.action.thresholds) out += "  mAP@" + detail::threshold_label(t);
  out += "       avg\n";
  const auto row = [&](const char* name, const MapResult& r) {
    std::string line = name;
    line.resize(8, ' ');
    for (double v : r.map) {
      std::string cell = format_fixed(100.0 * v, 2);
      line += std::string(cell.size() < 10 ? 10 - cell.size() : 0, ' ') + cell;
    }
    std::string avg = format_fixed(100.0 * r.average, 2);
    line += std::string(avg.size() < 10 ? 10 - avg.size() : 0, ' ') + avg + '\n';
    return line;
  };
  out += row("verb", m.verb);
  out += row("noun", m.noun);
  out += row("action", m.action);
  return out;
}

// Machine-readable `task.map@tau = value` lines (fractions, six digits).
inline std::string format_metrics_kv(const MetricsTable& m) {
  std::string out;
  const auto emit = [&](const char* name, const MapResult& r) {
    for (std::size_t i = 0; i < r.map.size(); ++i)
      out += std::string(name) + ".map@" + detail::threshold_label(r.thresholds[i]) + " = " +
             format_fixed(r.map[i], 6) + '\n';
    out += std::string(name) + ".map_avg = " + format_fixed(r.average, 6) + '\n';
  };
  emit("verb", m.verb);
  emit("noun", m.noun);
  emit("action", m.action);
  return out;
}

}  // namespace tadpost::io
