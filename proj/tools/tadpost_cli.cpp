// Command-line front end: pipeline, fuse, nms, eval, simulate, windows.
// Exit codes: 0 success, 1 input/validation error, 2 internal invariant violation.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "tadpost/tadpost.hpp"

namespace {

using namespace tadpost;

struct CommonOptions {
  std::string config_path;
  std::string output_path;
  std::string fusion_mode;
  std::string nms_preset;
};

io::PipelineConfig load_config(const CommonOptions& opts) {
  auto cfg = opts.config_path.empty() ? io::PipelineConfig{} : io::parse_config(opts.config_path);
  if (!opts.fusion_mode.empty()) cfg.fusion_mode = parse_fusion_mode(opts.fusion_mode);
  if (!opts.nms_preset.empty()) cfg.nms_preset = parse_nms_preset(opts.nms_preset);
  return cfg;
}

void emit(const CommonOptions& opts, const std::string& text) {
  if (opts.output_path.empty() || opts.output_path == "-")
    std::cout << text;
  else
    io::write_file(opts.output_path, text);
}

void add_common(CLI::App* cmd, CommonOptions& opts, bool fusion, bool nms) {
  cmd->add_option("--config", opts.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--output", opts.output_path, "output file (default: stdout)");
  if (fusion) cmd->add_option("--fusion-mode", opts.fusion_mode, "boundary fusion")->check(CLI::IsMember({"dwf", "mean"}));
  if (nms)
    cmd->add_option("--nms-preset", opts.nms_preset, "Soft-NMS preset")->check(CLI::IsMember({"noun", "verb_action"}));
}

int run_pipeline_cmd(const CommonOptions& opts, const std::string& input) {
  const auto cfg = load_config(opts);
  const auto records = io::parse_proposals(io::read_file(input));
  if (records.empty()) std::cerr << "warning: no proposals in '" << input << "'; writing an empty submission\n";
  io::PipelineStats stats;
  const auto doc = io::run_pipeline(records, cfg, &stats);
  io::validate_submission(doc, cfg.active_nms().max_per_video);
  emit(opts, io::serialize_submission(doc));
  std::cerr << "records=" << stats.records << " candidates=" << stats.candidates
            << " below_min_score=" << stats.below_min_score << " degenerate=" << stats.degenerate
            << " detections=" << stats.detections << '\n';
  return 0;
}

int run_fuse_cmd(const CommonOptions& opts, const std::string& input) {
  const auto cfg = load_config(opts);
  std::string out = "video_id\tstart_s\tend_s\tnoun_confidence\tverb_confidence\tnoun_weight\tverb_weight\n";
  for (const auto& r : io::parse_proposals(io::read_file(input))) {
    const auto f = io::fuse_record(r, cfg);
    out += f.video_id + '\t' + io::format_fixed(f.interval.start) + '\t' + io::format_fixed(f.interval.end) + '\t' +
           io::format_fixed(f.confidences.noun) + '\t' + io::format_fixed(f.confidences.verb) + '\t' +
           io::format_fixed(f.noun_weight, 6) + '\t' + io::format_fixed(f.verb_weight, 6) + '\n';
  }
  emit(opts, out);
  return 0;
}

int run_nms_cmd(const CommonOptions& opts, const std::string& input, const std::string& class_key) {
  const auto cfg = load_config(opts);
  auto doc = io::parse_submission(io::read_file(input), cfg.vocab);
  const ClassKey key = class_key == "verb" ? ClassKey::verb : class_key == "noun" ? ClassKey::noun : ClassKey::action;
  for (auto& [video, dets] : doc.results) dets = suppress_video(std::move(dets), cfg.active_nms(), key);
  emit(opts, io::serialize_submission(doc));
  return 0;
}

int run_eval_cmd(const CommonOptions& opts, const std::string& submission, const std::string& ground_truth,
                 bool kv_only) {
  const auto cfg = load_config(opts);
  const auto table = io::evaluate_files(submission, ground_truth, cfg.eval_config());
  emit(opts, kv_only ? io::format_metrics_kv(table) : io::format_metrics_table(table) + '\n' + io::format_metrics_kv(table));
  return 0;
}

struct SimulateOptions {
  std::optional<std::uint64_t> seed;
  std::string segments_table;
  std::string export_proposals;
  std::string export_ground_truth;
  bool end_to_end = false;
};

int run_simulate_cmd(const CommonOptions& opts, const SimulateOptions& sim) {
  auto cfg = load_config(opts);
  if (sim.seed) cfg.simulation.seed = *sim.seed;
  cfg.simulation.vocab = cfg.vocab;
  const auto scenario = generate_scenario(cfg.simulation);
  const auto report = compare_fusion(scenario, cfg.epsilon);
  std::string out = io::format_fusion_report(cfg.simulation, report);
  if (sim.end_to_end) {
    const auto e2e = io::end_to_end(scenario, cfg);
    out += "dwf.action.map@0.50 = " + io::format_fixed(e2e.dwf.action.map.back(), 6) + '\n';
    out += "mean.action.map@0.50 = " + io::format_fixed(e2e.mean.action.map.back(), 6) + '\n';
    out += "dwf.action.map_avg = " + io::format_fixed(e2e.dwf.action.average, 6) + '\n';
    out += "mean.action.map_avg = " + io::format_fixed(e2e.mean.action.average, 6) + '\n';
  }
  emit(opts, out);
  if (!sim.segments_table.empty()) io::write_file(sim.segments_table, io::format_segment_table(scenario, report));
  if (!sim.export_proposals.empty())
    io::write_file(sim.export_proposals, io::format_proposals(io::scenario_to_records(scenario, cfg.grid)));
  if (!sim.export_ground_truth.empty())
    io::write_file(sim.export_ground_truth, io::format_ground_truth(scenario.ground_truth));
  return 0;
}

int run_windows_cmd(const CommonOptions& opts, std::int64_t total) {
  const auto cfg = load_config(opts);
  std::string out = "start_feature\tlength_features\tstart_s\n";
  for (const auto& w : generate_windows(total, cfg.max_window_length, cfg.overlap))
    out += std::to_string(w.start_feature) + '\t' + std::to_string(w.length_features) + '\t' +
           io::format_fixed(feature_index_to_seconds(w.start_feature, cfg.grid)) + '\n';
  emit(opts, out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-stream temporal action detection post-processing"};
  app.require_subcommand(1);

  CommonOptions opts;
  std::string input;

  auto* pipeline = app.add_subcommand("pipeline", "proposal file -> challenge submission JSON");
  add_common(pipeline, opts, true, true);
  pipeline->add_option("--input", input, "proposal file")->required()->check(CLI::ExistingFile);

  auto* fuse = app.add_subcommand("fuse", "print the fused interval of each proposal record");
  add_common(fuse, opts, true, false);
  fuse->add_option("--input", input, "proposal file")->required()->check(CLI::ExistingFile);

  std::string class_key = "action";
  auto* nms = app.add_subcommand("nms", "re-run class-wise Soft-NMS over a submission");
  add_common(nms, opts, false, true);
  nms->add_option("--input", input, "submission JSON")->required()->check(CLI::ExistingFile);
  nms->add_option("--class-key", class_key, "grouping key")->check(CLI::IsMember({"verb", "noun", "action"}));

  std::string ground_truth;
  bool kv_only = false;
  auto* eval = app.add_subcommand("eval", "verb/noun/action mAP of a submission");
  add_common(eval, opts, false, false);
  eval->add_option("--submission", input, "submission JSON")->required()->check(CLI::ExistingFile);
  eval->add_option("--ground-truth", ground_truth, "ground-truth file")->required()->check(CLI::ExistingFile);
  eval->add_flag("--kv", kv_only, "only key = value lines");

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo comparison of DWF and hard-mean fusion");
  add_common(simulate, opts, false, true);
  simulate->add_option("--seed", sim.seed, "override the scenario seed");
  simulate->add_option("--segments-table", sim.segments_table, "write per-segment errors (TSV)");
  simulate->add_option("--export-proposals", sim.export_proposals, "write the scenario as a proposal file");
  simulate->add_option("--export-ground-truth", sim.export_ground_truth, "write the scenario ground truth");
  simulate->add_flag("--end-to-end", sim.end_to_end, "also run the full pipeline under both fusion modes");

  std::int64_t total = 0;
  auto* windows = app.add_subcommand("windows", "sliding windows over a feature sequence");
  add_common(windows, opts, false, false);
  windows->add_option("--total", total, "feature count")->required()->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (pipeline->parsed()) return run_pipeline_cmd(opts, input);
    if (fuse->parsed()) return run_fuse_cmd(opts, input);
    if (nms->parsed()) return run_nms_cmd(opts, input, class_key);
    if (eval->parsed()) return run_eval_cmd(opts, input, ground_truth, kv_only);
    if (simulate->parsed()) return run_simulate_cmd(opts, sim);
    if (windows->parsed()) return run_windows_cmd(opts, total);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
