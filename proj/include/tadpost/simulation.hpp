#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "tadpost/composition.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/evaluation.hpp"
#include "tadpost/fusion.hpp"
#include "tadpost/interval.hpp"

namespace tadpost {

// Synthetic two-stream regime: each stream's confidence is drawn uniformly
// from [confidence_lo, confidence_hi] and its boundary noise has standard
// deviation sigma_max * (1 - C) + sigma_min seconds.
struct ScenarioConfig {
  std::size_t num_segments = 10000;
  std::size_t num_videos = 1;
  double video_length_s = 600.0;
  double min_duration_s = 2.0;
  double max_duration_s = 8.0;
  double confidence_lo = 0.1;
  double confidence_hi = 0.95;
  double sigma_min = 0.05;
  double sigma_max = 1.0;
  std::uint64_t seed = 0;
  VocabSpec vocab{};

  double noise_sigma(double confidence) const noexcept { return sigma_max * (1.0 - confidence) + sigma_min; }

  void validate() const {
    if (num_segments < 1 || num_videos < 1) throw InvalidConfig("scenario needs at least one segment and one video");
    if (!vocab.valid()) throw InvalidConfig("vocabulary sizes must be positive");
    if (!(0.0 <= confidence_lo && confidence_lo <= confidence_hi && confidence_hi <= 1.0))
      throw InvalidConfig("confidence law requires 0 <= c_lo <= c_hi <= 1");
    if (!(sigma_min >= 0.0 && sigma_max >= sigma_min)) throw InvalidConfig("noise law requires 0 <= sigma_min <= sigma_max");
    if (!(min_duration_s > 0.0 && max_duration_s >= min_duration_s && max_duration_s <= video_length_s))
      throw InvalidConfig("segment durations must be positive and fit in the video");
  }
};

// One stream's noisy view of a ground-truth segment.
struct StreamObservation {
  TimeSpan boundary;
  std::vector<double> scores;
  double confidence = 0.0;

  friend bool operator==(const StreamObservation&, const StreamObservation&) = default;
};

struct Scenario {
  ScenarioConfig config;
  std::vector<GroundTruthInstance> ground_truth;
  std::vector<StreamObservation> noun_stream;  // aligned with ground_truth
  std::vector<StreamObservation> verb_stream;
};

inline std::string simulated_video_id(std::size_t video) {
  std::string digits = std::to_string(video);
  return "sim_" + std::string(digits.size() < 4 ? 4 - digits.size() : 0, '0') + digits;
}

namespace detail {

// Independent generator per segment so segments can be produced in any order.
inline std::mt19937_64 segment_engine(std::uint64_t seed, std::size_t segment) {
  const auto index = static_cast<std::uint64_t>(segment);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32), 0x7ad5u};
  return std::mt19937_64(seq);
}

// Confidence on the true class; the remainder spread evenly, never above it.
inline std::vector<double> confident_scores(int size, int true_class, double confidence) {
  const double rest = size > 1 ? std::min(confidence, (1.0 - confidence) / static_cast<double>(size - 1)) : 0.0;
  std::vector<double> scores(static_cast<std::size_t>(size), rest);
  scores[static_cast<std::size_t>(true_class)] = confidence;
  return scores;
}

inline TimeSpan perturb(const TimeSpan& truth, double sigma, double video_length, std::mt19937_64& rng) {
  if (sigma == 0.0) return truth;
  std::normal_distribution<double> noise(0.0, sigma);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    const TimeSpan b{truth.start + noise(rng), truth.end + noise(rng)};
    if (b.start >= 0.0 && b.start < b.end && b.end <= video_length) return b;
  }
  throw InvalidConfig("boundary noise too large for the segment and video lengths");
}

}  // namespace detail

inline Scenario generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  Scenario s;
  s.config = cfg;
  s.ground_truth.reserve(cfg.num_segments);
  s.noun_stream.reserve(cfg.num_segments);
  s.verb_stream.reserve(cfg.num_segments);
  for (std::size_t i = 0; i < cfg.num_segments; ++i) {
    auto rng = detail::segment_engine(cfg.seed, i);
    std::uniform_real_distribution<double> duration_law(cfg.min_duration_s, cfg.max_duration_s);
    std::uniform_real_distribution<double> confidence_law(cfg.confidence_lo, cfg.confidence_hi);
    std::uniform_int_distribution<int> noun_law(0, cfg.vocab.noun_count - 1);
    std::uniform_int_distribution<int> verb_law(0, cfg.vocab.verb_count - 1);

    const double duration = duration_law(rng);
    const double start = std::uniform_real_distribution<double>(0.0, cfg.video_length_s - duration)(rng);
    GroundTruthInstance gt{simulated_video_id(i % cfg.num_videos), {start, start + duration}, verb_law(rng),
                           noun_law(rng)};
    const double noun_conf = confidence_law(rng);
    const double verb_conf = confidence_law(rng);

    s.noun_stream.push_back({detail::perturb(gt.interval, cfg.noise_sigma(noun_conf), cfg.video_length_s, rng),
                             detail::confident_scores(cfg.vocab.noun_count, gt.noun, noun_conf), noun_conf});
    s.verb_stream.push_back({detail::perturb(gt.interval, cfg.noise_sigma(verb_conf), cfg.video_length_s, rng),
                             detail::confident_scores(cfg.vocab.verb_count, gt.verb, verb_conf), verb_conf});
    s.ground_truth.push_back(std::move(gt));
  }
  return s;
}

struct FusionReport {
  double mean_abs_err_dwf = 0.0;
  double mean_abs_err_mean = 0.0;
  std::vector<double> errors_dwf;   // |b_hat - b*| summed over start and end
  std::vector<double> errors_mean;
  double mean_gap = 0.0;       // mean of dwf - mean error per segment
  double gap_stderr = 0.0;
  double t_statistic = 0.0;
  double p_value = 1.0;        // one-sided, H1: dwf error < mean error
  double weight_error_correlation = 0.0;  // corr(W^n - W^v, E^v - E^n)
};

namespace detail {
inline double abs_error(const TimeSpan& b, const TimeSpan& truth) {
  return std::abs(b.start - truth.start) + std::abs(b.end - truth.end);
}

inline double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxx > 0.0 && syy > 0.0 ? sxy / std::sqrt(sxx * syy) : 0.0;
}
}  // namespace detail

// Per-segment boundary error of DWF and of the hard mean against ground
// truth, with a paired one-sided z-test on the differences.
inline FusionReport compare_fusion(const Scenario& scenario, double epsilon = kDefaultFusionEpsilon) {
  const std::size_t n = scenario.ground_truth.size();
  if (scenario.noun_stream.size() != n || scenario.verb_stream.size() != n)
    throw LengthMismatch("scenario streams are not aligned with the ground truth");
  FusionReport r;
  if (n == 0) return r;
  r.errors_dwf.reserve(n);
  r.errors_mean.reserve(n);
  std::vector<double> weight_gap(n), error_gap(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& noun = scenario.noun_stream[i];
    const auto& verb = scenario.verb_stream[i];
    const auto& truth = scenario.ground_truth[i].interval;
    const auto w = dwf_weights(stream_confidences(noun.scores, verb.scores), epsilon);
    r.errors_dwf.push_back(detail::abs_error(fuse_boundaries(noun.boundary, verb.boundary, w), truth));
    r.errors_mean.push_back(detail::abs_error(hard_mean_fusion(noun.boundary, verb.boundary), truth));
    weight_gap[i] = w.noun_weight - w.verb_weight;
    error_gap[i] = detail::abs_error(verb.boundary, truth) - detail::abs_error(noun.boundary, truth);
  }
  const auto count = static_cast<double>(n);
  double sum_dwf = 0.0, sum_mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum_dwf += r.errors_dwf[i];
    sum_mean += r.errors_mean[i];
  }
  r.mean_abs_err_dwf = sum_dwf / count;
  r.mean_abs_err_mean = sum_mean / count;
  r.mean_gap = r.mean_abs_err_dwf - r.mean_abs_err_mean;

  if (n > 1) {
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = r.errors_dwf[i] - r.errors_mean[i] - r.mean_gap;
      ss += d * d;
    }
    r.gap_stderr = std::sqrt(ss / (count - 1.0)) / std::sqrt(count);
  }
  if (r.gap_stderr > 0.0) {
    r.t_statistic = r.mean_gap / r.gap_stderr;
    r.p_value = 0.5 * std::erfc(-r.t_statistic / std::sqrt(2.0));
  } else {
    r.p_value = r.mean_gap < 0.0 ? 0.0 : 1.0;
  }
  r.weight_error_correlation = detail::pearson(weight_gap, error_gap);
  return r;
}

}  // namespace tadpost
