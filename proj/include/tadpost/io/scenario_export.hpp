#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "tadpost/io/config.hpp"
#include "tadpost/io/pipeline.hpp"
#include "tadpost/io/records.hpp"
#include "tadpost/io/text.hpp"
#include "tadpost/simulation.hpp"
#include "tadpost/timeline.hpp"

namespace tadpost::io {

namespace detail {
inline std::vector<ScoredIndex> sparse_scores(const std::vector<double>& dense) {
  std::vector<ScoredIndex> out;
  for (std::size_t i = 0; i < dense.size(); ++i)
    if (dense[i] > 0.0) out.push_back({static_cast<int>(i), dense[i]});
  return out;
}
}  // namespace detail

// Expresses a scenario as proposal-file records, one window per video starting
// at feature 0. Times before the first feature centre clamp on the way back.
inline std::vector<ProposalRecord> scenario_to_records(const Scenario& s, const FeatureGrid& grid) {
  std::vector<ProposalRecord> out;
  out.reserve(s.ground_truth.size());
  for (std::size_t i = 0; i < s.ground_truth.size(); ++i) {
    out.push_back({s.ground_truth[i].video_id, 0, seconds_to_boundary(s.noun_stream[i].boundary, grid),
                   detail::sparse_scores(s.noun_stream[i].scores), seconds_to_boundary(s.verb_stream[i].boundary, grid),
                   detail::sparse_scores(s.verb_stream[i].scores)});
  }
  return out;
}

struct EndToEndResult {
  MetricsTable dwf;
  MetricsTable mean;
};

// Full pipeline on a scenario under both fusion modes, evaluated against the
// scenario's ground truth.
inline EndToEndResult end_to_end(const Scenario& s, PipelineConfig cfg) {
  cfg.vocab = s.config.vocab;
  const auto records = scenario_to_records(s, FeatureGrid{cfg.grid.stride_frames, cfg.grid.offset_frames, cfg.grid.fps, 0});
  EndToEndResult r;
  cfg.fusion_mode = FusionMode::dwf;
  r.dwf = evaluate_submission(run_pipeline(records, cfg), s.ground_truth, cfg.eval_config());
  cfg.fusion_mode = FusionMode::mean;
  r.mean = evaluate_submission(run_pipeline(records, cfg), s.ground_truth, cfg.eval_config());
  return r;
}

inline std::string format_fusion_report(const ScenarioConfig& cfg, const FusionReport& r) {
  std::string out;
  const auto kv = [&](const char* key, const std::string& value) { out += std::string(key) + " = " + value + '\n'; };
  kv("seed", std::to_string(cfg.seed));
  kv("segments", std::to_string(r.errors_dwf.size()));
  kv("confidence_range", format_fixed(cfg.confidence_lo, 4) + "," + format_fixed(cfg.confidence_hi, 4));
  kv("noise_sigma_min", format_fixed(cfg.sigma_min, 4));
  kv("noise_sigma_max", format_fixed(cfg.sigma_max, 4));
  kv("mean_abs_err_dwf", format_fixed(r.mean_abs_err_dwf, 6));
  kv("mean_abs_err_mean", format_fixed(r.mean_abs_err_mean, 6));
  kv("mean_gap", format_fixed(r.mean_gap, 6));
  kv("gap_stderr", format_fixed(r.gap_stderr, 6));
  kv("t_statistic", format_fixed(r.t_statistic, 4));
  char p[32];
  std::snprintf(p, sizeof p, "%.6e", r.p_value);
  kv("p_value_one_sided", p);
  kv("weight_error_correlation", format_fixed(r.weight_error_correlation, 6));
  return out;
}

inline std::string format_segment_table(const Scenario& s, const FusionReport& r) {
  std::string out = "segment\tvideo_id\tnoun_confidence\tverb_confidence\terr_dwf\terr_mean\n";
  for (std::size_t i = 0; i < r.errors_dwf.size(); ++i)
    out += std::to_string(i) + '\t' + s.ground_truth[i].video_id + '\t' + format_fixed(s.noun_stream[i].confidence, 6) +
           '\t' + format_fixed(s.verb_stream[i].confidence, 6) + '\t' + format_fixed(r.errors_dwf[i], 6) + '\t' +
           format_fixed(r.errors_mean[i], 6) + '\n';
  return out;
}

}  // namespace tadpost::io
