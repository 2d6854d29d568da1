// Command line front end: synthetic sequence generation, end-to-end runs,
// scoring, ROC sweeps and tuning-curve experiments.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stmd/errors.hpp"
#include "stmd/eval.hpp"
#include "stmd/image_io.hpp"
#include "stmd/pipeline.hpp"
#include "stmd/records.hpp"
#include "stmd/synth.hpp"

namespace fs = std::filesystem;

namespace {

struct ConfigArgs {
  std::string config_file;
  std::vector<std::string> sets;

  stmd::RunConfig build() const {
    stmd::RunConfig config;
    if (!config_file.empty()) config = stmd::load_config(config_file);
    for (const std::string& s : sets) stmd::apply_setting(config, s);
    return config;
  }
};

void add_config_options(CLI::App* app, ConfigArgs& args) {
  app->add_option("--config", args.config_file, "Config file (key = value lines)");
  app->add_option("--set", args.sets, "Override one config key (key=value)")
      ->take_all();
}

// Frames either from a directory/manifest or generated from a sequence spec.
struct SourceArgs {
  std::string frames;
  std::string synth_spec;

  std::unique_ptr<stmd::FrameSource> open(stmd::GroundTruth* truth_out) const {
    if (!synth_spec.empty()) {
      auto src = std::make_unique<stmd::SyntheticFrameSource>(
          stmd::load_sequence_spec(synth_spec));
      if (truth_out) *truth_out = src->sequence().ground_truth();
      return src;
    }
    if (frames.empty()) {
      throw stmd::ConfigError("either --frames or --synth-spec is required");
    }
    return stmd::open_frames(frames);
  }
};

void add_source_options(CLI::App* app, SourceArgs& args) {
  app->add_option("--frames", args.frames,
                  "Directory of .pgm/.png frames or a manifest file");
  app->add_option("--synth-spec", args.synth_spec,
                  "Generate frames from a sequence spec file instead");
}

std::vector<double> parse_value_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= csv.size()) {
    const auto next = csv.find(',', pos);
    const std::string item =
        csv.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!item.empty()) {
      try {
        out.push_back(std::stod(item));
      } catch (const std::exception&) {
        throw stmd::ConfigError(std::string("bad ") + what + " value: " + item);
      }
    }
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  if (out.empty()) throw stmd::ConfigError(std::string(what) + " list is empty");
  return out;
}

int cmd_synth(const std::string& spec_path, const std::string& out_dir,
              const std::string& gt_path, const std::string& format) {
  const stmd::SequenceSpec spec = stmd::load_sequence_spec(spec_path);
  const stmd::SyntheticSequence seq(spec);
  fs::create_directories(out_dir);
  char name[32];
  for (int t = 0; t < seq.frame_count(); ++t) {
    std::snprintf(name, sizeof name, "%06d.%s", t, format.c_str());
    const std::string path = (fs::path(out_dir) / name).string();
    if (format == "pgm") {
      stmd::write_pgm(seq.frame(t), path);
    } else {
      stmd::write_png(seq.frame(t), path);
    }
  }
  const std::string gt =
      gt_path.empty() ? (fs::path(out_dir) / "ground_truth.csv").string() : gt_path;
  stmd::write_ground_truth_csv(seq.ground_truth(), gt);
  std::cout << "frames=" << seq.frame_count() << " size=" << seq.width() << "x"
            << seq.height() << " ground_truth=" << gt << "\n";
  return stmd::kExitOk;
}

int cmd_run(const ConfigArgs& cfg, const SourceArgs& src,
            const std::string& out_detections, const std::string& out_traces) {
  const stmd::RunConfig config = cfg.build();
  const auto source = src.open(nullptr);
  const stmd::RunResult result = stmd::run_pipeline(config, *source);
  if (!out_detections.empty()) {
    stmd::write_detections_csv(result.detections, out_detections);
  }
  if (!out_traces.empty()) {
    stmd::write_traces_csv(result.traces, out_traces);
  }
  std::cout << "frames=" << result.frames
            << " warmup_frames=" << result.warmup_frames
            << " detections=" << result.detections.size()
            << " traces=" << result.traces.size() << "\n";
  return stmd::kExitOk;
}

int cmd_eval(const std::string& detections_path, const std::string& gt_path,
             double radius, int warmup, bool include_undecided, bool all_labels) {
  const auto detections = stmd::read_detections_csv_file(detections_path);
  const auto truth = stmd::read_ground_truth_csv_file(gt_path);
  stmd::ScoreOptions opt;
  opt.radius = radius;
  opt.first_frame = warmup;
  opt.include_undecided = include_undecided;
  opt.all_labels = all_labels;
  const stmd::EvalResult res = stmd::match_and_score(detections, truth, opt);
  std::cout << "D_R=" << stmd::format_double(res.detection_rate)
            << " F_A=" << stmd::format_double(res.false_alarm_rate)
            << " true=" << res.true_detections << " targets=" << res.actual_targets
            << " false=" << res.false_detections << " frames=" << res.frames
            << "\n";
  return stmd::kExitOk;
}

int cmd_roc(const ConfigArgs& cfg, const SourceArgs& src,
            const std::string& gt_path, const std::string& betas_csv,
            const std::string& out_path, double radius) {
  stmd::RunConfig config = cfg.build();
  stmd::GroundTruth truth;
  const auto source = src.open(&truth);
  if (!gt_path.empty()) truth = stmd::read_ground_truth_csv_file(gt_path);
  if (truth.empty()) {
    throw stmd::ConfigError("roc needs ground truth (--gt or --synth-spec)");
  }
  const std::vector<double> betas = parse_value_list(betas_csv, "beta");
  const stmd::PipelineCache cache = stmd::run_and_cache(config, *source);
  const auto points = stmd::roc_sweep(cache, truth, config, betas, radius);
  stmd::write_roc_csv(points, out_path);
  for (const auto& p : points) {
    std::cout << "beta=" << stmd::format_double(p.beta)
              << " D_R=" << stmd::format_double(p.detection_rate)
              << " F_A=" << stmd::format_double(p.false_alarm_rate) << "\n";
  }
  return stmd::kExitOk;
}

int cmd_tune(const ConfigArgs& cfg, const std::string& axis_name,
             const std::string& values_csv, const std::string& out_path) {
  const stmd::RunConfig config = cfg.build();
  const stmd::TuningAxis axis = stmd::tuning_axis_from_string(axis_name);
  const std::vector<double> grid = values_csv.empty()
                                       ? stmd::tuning_default_grid(axis)
                                       : parse_value_list(values_csv, "grid");
  const auto points = stmd::tuning_experiment(axis, grid, config.pipeline,
                                              stmd::tuning_base_spec());
  stmd::write_tuning_csv(points, out_path);
  for (const auto& p : points) {
    std::cout << "value=" << stmd::format_double(p.value)
              << " mean_response=" << stmd::format_double(p.mean_response) << "\n";
  }
  return stmd::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Small target motion detection in cluttered moving scenes"};
  app.require_subcommand(1);

  // synth
  auto* synth = app.add_subcommand("synth", "Generate a synthetic sequence");
  std::string synth_spec, synth_out, synth_gt, synth_format = "pgm";
  synth->add_option("--spec", synth_spec, "Sequence spec file")->required();
  synth->add_option("--out", synth_out, "Output directory")->required();
  synth->add_option("--gt", synth_gt, "Ground truth csv path");
  synth->add_option("--format", synth_format, "Frame format: pgm or png")
      ->check(CLI::IsMember({"pgm", "png"}));

  // run
  auto* run = app.add_subcommand("run", "Run the detector over a sequence");
  ConfigArgs run_cfg;
  SourceArgs run_src;
  std::string run_out_det = "detections.csv", run_out_traces;
  add_config_options(run, run_cfg);
  add_source_options(run, run_src);
  run->add_option("--out-detections", run_out_det, "Detections csv path");
  run->add_option("--out-traces", run_out_traces, "Trace summary csv path");

  // eval
  auto* eval = app.add_subcommand("eval", "Score detections against ground truth");
  std::string eval_det, eval_gt;
  double eval_radius = 5.0;
  int eval_warmup = 0;
  bool eval_undecided = false, eval_all = false;
  eval->add_option("--detections", eval_det, "Detections csv")->required();
  eval->add_option("--gt", eval_gt, "Ground truth csv")->required();
  eval->add_option("--radius", eval_radius, "Match radius in pixels");
  eval->add_option("--warmup", eval_warmup, "Skip frames before this index");
  eval->add_flag("--include-undecided", eval_undecided,
                 "Count undecided traces as detections");
  eval->add_flag("--all-labels", eval_all, "Count every detection");

  // roc
  auto* roc = app.add_subcommand("roc", "Detection/false-alarm sweep over beta");
  ConfigArgs roc_cfg;
  SourceArgs roc_src;
  std::string roc_gt, roc_betas, roc_out = "roc.csv";
  double roc_radius = 5.0;
  add_config_options(roc, roc_cfg);
  add_source_options(roc, roc_src);
  roc->add_option("--gt", roc_gt, "Ground truth csv (defaults to --synth-spec's)");
  roc->add_option("--betas", roc_betas, "Comma-separated increasing thresholds")
      ->required();
  roc->add_option("--out", roc_out, "ROC csv path");
  roc->add_option("--radius", roc_radius, "Match radius in pixels");

  // tune
  auto* tune = app.add_subcommand("tune", "Response curve over one stimulus axis");
  ConfigArgs tune_cfg;
  std::string tune_axis, tune_values, tune_out = "tuning.csv";
  add_config_options(tune, tune_cfg);
  tune->add_option("--axis", tune_axis, "contrast | velocity | width | height")
      ->required();
  tune->add_option("--values", tune_values, "Comma-separated grid values");
  tune->add_option("--out", tune_out, "Curve csv path");

  try {
    app.parse(argc, argv);
    if (*synth) return cmd_synth(synth_spec, synth_out, synth_gt, synth_format);
    if (*run) return cmd_run(run_cfg, run_src, run_out_det, run_out_traces);
    if (*eval) {
      return cmd_eval(eval_det, eval_gt, eval_radius, eval_warmup,
                      eval_undecided, eval_all);
    }
    if (*roc) return cmd_roc(roc_cfg, roc_src, roc_gt, roc_betas, roc_out, roc_radius);
    if (*tune) return cmd_tune(tune_cfg, tune_axis, tune_values, tune_out);
    return stmd::kExitConfig;
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? stmd::kExitOk : stmd::kExitConfig;
  } catch (const stmd::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return stmd::kExitConfig;
  } catch (const stmd::InvalidParameter& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return stmd::kExitConfig;
  } catch (const stmd::IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return stmd::kExitIo;
  } catch (const stmd::InvalidState& e) {
    std::cerr << "state error: " << e.what() << "\n";
    return stmd::kExitState;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return stmd::kExitState;
  }
}
