#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "tadpost/composition.hpp"
#include "tadpost/decode.hpp"
#include "tadpost/errors.hpp"
#include "tadpost/evaluation.hpp"
#include "tadpost/io/text.hpp"

namespace tadpost::io {

// One aligned noun/verb proposal pair as produced by the two detectors.
// Boundaries are in feature coordinates local to the window; scores are
// sparse (absent classes are zero).
struct ProposalRecord {
  std::string video_id;
  std::int64_t window_start_feature = 0;
  FeatureSpan noun_boundary;
  std::vector<ScoredIndex> noun_scores;
  FeatureSpan verb_boundary;
  std::vector<ScoredIndex> verb_scores;

  friend bool operator==(const ProposalRecord&, const ProposalRecord&) = default;
};

// Dense score vector of the given vocabulary size.
inline std::vector<double> densify(const std::vector<ScoredIndex>& sparse, int size) {
  std::vector<double> dense(static_cast<std::size_t>(size), 0.0);
  for (const auto& s : sparse) {
    if (s.index < 0 || s.index >= size)
      throw VocabularyMismatch("class index " + std::to_string(s.index) + " outside a vocabulary of " +
                               std::to_string(size));
    dense[static_cast<std::size_t>(s.index)] = s.score;
  }
  return dense;
}

namespace detail {

inline std::vector<ScoredIndex> parse_sparse(std::string_view field, std::size_t line_no) {
  std::vector<ScoredIndex> out;
  if (field == "-") return out;
  for (auto item : split(field, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string_view::npos) throw ParseError("score entry '" + std::string(item) + "' is not index:score", line_no);
    const auto index = parse_number<int>(item.substr(0, colon));
    const auto score = parse_number<double>(item.substr(colon + 1));
    if (!index || !score) throw ParseError("malformed score entry '" + std::string(item) + "'", line_no);
    if (*index < 0) throw ParseError("negative class index", line_no);
    if (!(*score >= 0.0 && *score <= 1.0)) throw ParseError("score outside [0, 1]", line_no);
    out.push_back({*index, *score});
  }
  return out;
}

inline double parse_coordinate(std::string_view field, std::size_t line_no) {
  const auto v = parse_number<double>(field);
  if (!v) throw ParseError("malformed number '" + std::string(field) + "'", line_no);
  return *v;
}

inline std::string format_sparse(const std::vector<ScoredIndex>& scores) {
  if (scores.empty()) return "-";
  std::string out;
  for (const auto& s : scores) {
    if (!out.empty()) out += ',';
    out += std::to_string(s.index) + ':' + format_exact(s.score);
  }
  return out;
}

}  // namespace detail

// Whitespace-separated columns, one record per line:
//   video_id window_start noun_start noun_end noun_scores verb_start verb_end verb_scores
// where scores are `index:score,...` or `-` for none.
inline std::vector<ProposalRecord> parse_proposals(std::string_view text) {
  std::vector<ProposalRecord> records;
  for_each_content_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto f = split_fields(line);
    if (f.size() != 8) throw ParseError("expected 8 fields, found " + std::to_string(f.size()), line_no);
    ProposalRecord r;
    r.video_id = std::string(f[0]);
    const auto start = parse_number<std::int64_t>(f[1]);
    if (!start || *start < 0) throw ParseError("window start must be a non-negative integer", line_no);
    r.window_start_feature = *start;
    r.noun_boundary = {detail::parse_coordinate(f[2], line_no), detail::parse_coordinate(f[3], line_no)};
    r.noun_scores = detail::parse_sparse(f[4], line_no);
    r.verb_boundary = {detail::parse_coordinate(f[5], line_no), detail::parse_coordinate(f[6], line_no)};
    r.verb_scores = detail::parse_sparse(f[7], line_no);
    if (!r.noun_boundary.valid() || !r.verb_boundary.valid())
      throw ParseError("boundary start must precede end", line_no);
    records.push_back(std::move(r));
  });
  return records;
}

inline std::string format_proposals(const std::vector<ProposalRecord>& records) {
  std::string out = "# video_id window_start noun_start noun_end noun_scores verb_start verb_end verb_scores\n";
  for (const auto& r : records) {
    out += r.video_id + '\t' + std::to_string(r.window_start_feature) + '\t' + format_exact(r.noun_boundary.start) +
           '\t' + format_exact(r.noun_boundary.end) + '\t' + detail::format_sparse(r.noun_scores) + '\t' +
           format_exact(r.verb_boundary.start) + '\t' + format_exact(r.verb_boundary.end) + '\t' +
           detail::format_sparse(r.verb_scores) + '\n';
  }
  return out;
}

// Ground truth: `video_id start_s end_s verb noun` per line.
inline std::vector<GroundTruthInstance> parse_ground_truth(std::string_view text) {
  std::vector<GroundTruthInstance> out;
  for_each_content_line(text, [&](std::string_view line, std::size_t line_no) {
    const auto f = split_fields(line);
    if (f.size() != 5) throw ParseError("expected 5 fields, found " + std::to_string(f.size()), line_no);
    const auto start = parse_number<double>(f[1]);
    const auto end = parse_number<double>(f[2]);
    const auto verb = parse_number<int>(f[3]);
    const auto noun = parse_number<int>(f[4]);
    if (!start || !end || !verb || !noun) throw ParseError("malformed ground-truth line", line_no);
    if (!(*start < *end)) throw ParseError("segment start must precede end", line_no);
    if (*verb < 0 || *noun < 0) throw ParseError("class indices must be non-negative", line_no);
    out.push_back({std::string(f[0]), {*start, *end}, *verb, *noun});
  });
  return out;
}

inline std::string format_ground_truth(const std::vector<GroundTruthInstance>& gts) {
  std::string out = "# video_id start_s end_s verb noun\n";
  for (const auto& g : gts)
    out += g.video_id + '\t' + format_exact(g.interval.start) + '\t' + format_exact(g.interval.end) + '\t' +
           std::to_string(g.verb) + '\t' + std::to_string(g.noun) + '\n';
  return out;
}

}  // namespace tadpost::io
