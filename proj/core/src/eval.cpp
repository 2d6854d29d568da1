#include "stmd/eval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>

#include "stmd/errors.hpp"
#include "stmd/image_io.hpp"

namespace stmd {

EvalResult match_and_score(const std::vector<DetectionRecord>& detections,
                           const GroundTruth& truth, const ScoreOptions& opt) {
  std::map<int, GroundTruthEntry> gt_by_frame;
  for (const GroundTruthEntry& e : truth) {
    if (e.t >= opt.first_frame) gt_by_frame[e.t] = e;
  }

  auto counted = [&](const DetectionRecord& r) {
    if (r.frame < opt.first_frame) return false;
    if (opt.all_labels) return true;
    if (r.label == TraceLabel::target) return true;
    if (opt.include_undecided && r.label == TraceLabel::undecided) return true;
    return false;
  };

  // Per frame: nearest counted detection within the radius earns the single
  // true-detection credit; everything else counted on that frame is false.
  std::map<int, std::vector<const DetectionRecord*>> dets_by_frame;
  for (const DetectionRecord& r : detections) {
    if (counted(r)) dets_by_frame[r.frame].push_back(&r);
  }

  EvalResult res;
  res.actual_targets = long(gt_by_frame.size());
  res.frames = long(gt_by_frame.size());
  const double r2 = opt.radius * opt.radius;
  for (const auto& [frame, dets] : dets_by_frame) {
    const auto gt = gt_by_frame.find(frame);
    long false_here = long(dets.size());
    if (gt != gt_by_frame.end()) {
      double best = r2;
      const DetectionRecord* best_det = nullptr;
      for (const DetectionRecord* d : dets) {
        const double dx = d->x - gt->second.x;
        const double dy = d->y - gt->second.y;
        const double d2 = dx * dx + dy * dy;
        if (d2 <= best) {
          best = d2;
          best_det = d;
        }
      }
      if (best_det) {
        ++res.true_detections;
        --false_here;
      }
    }
    res.false_detections += false_here;
  }
  res.detection_rate = res.actual_targets > 0
                           ? double(res.true_detections) / double(res.actual_targets)
                           : 0.0;
  res.false_alarm_rate =
      res.frames > 0 ? double(res.false_detections) / double(res.frames) : 0.0;
  return res;
}

double weber_contrast(const Frame& frame, int x, int y, int w, int h, int d) {
  if (w < 1 || h < 1 || d < 1) {
    throw InvalidParameter("weber_contrast: bad rectangle");
  }
  if (x - d < 0 || y - d < 0 || x + w + d > frame.width() ||
      y + h + d > frame.height()) {
    throw InvalidParameter(
        "weber_contrast: rectangle plus margin must stay inside the frame");
  }
  double target_sum = 0.0;
  for (int yy = y; yy < y + h; ++yy) {
    for (int xx = x; xx < x + w; ++xx) target_sum += frame.at(xx, yy);
  }
  double ring_sum = 0.0;
  long ring_count = 0;
  for (int yy = y - d; yy < y + h + d; ++yy) {
    for (int xx = x - d; xx < x + w + d; ++xx) {
      if (xx >= x && xx < x + w && yy >= y && yy < y + h) continue;
      ring_sum += frame.at(xx, yy);
      ++ring_count;
    }
  }
  const double mu_t = target_sum / (double(w) * h);
  const double mu_b = ring_sum / double(ring_count);
  return std::fabs(mu_t - mu_b) / 255.0;
}

TuningAxis tuning_axis_from_string(const std::string& s) {
  if (s == "contrast") return TuningAxis::contrast;
  if (s == "velocity") return TuningAxis::velocity;
  if (s == "width") return TuningAxis::width;
  if (s == "height") return TuningAxis::height;
  throw ConfigError("unknown tuning axis: " + s);
}

SequenceSpec tuning_base_spec() {
  SequenceSpec spec;
  spec.background = "uniform:500x250:255";
  spec.bg_velocity = 0.0;
  spec.target_w = 5;
  spec.target_h = 5;
  spec.target_luminance = 0.0;  // Weber contrast 1 against the white field
  spec.target_velocity = 250.0;
  spec.path = {{30.0, 125.0}, {470.0, 125.0}};
  spec.frames = 500;
  spec.rate = 1000.0;
  return spec;
}

std::vector<double> tuning_default_grid(TuningAxis axis) {
  switch (axis) {
    case TuningAxis::contrast:
      return {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    case TuningAxis::velocity:
      return {25, 50, 100, 150, 200, 250, 300, 350, 400, 500, 600, 800};
    case TuningAxis::width:
    case TuningAxis::height:
      return {1, 2, 3, 5, 7, 9, 12, 15, 20};
  }
  throw ConfigError("unknown tuning axis");
}

namespace {

SequenceSpec spec_for_value(TuningAxis axis, double value, SequenceSpec spec) {
  switch (axis) {
    case TuningAxis::contrast:
      if (!(value >= 0.0 && value <= 1.0)) {
        throw InvalidParameter("Weber contrast values must lie in [0, 1]");
      }
      // Dark target on the white field: luminance 255*(1 - c).
      spec.target_luminance = 255.0 * (1.0 - value);
      break;
    case TuningAxis::velocity:
      spec.target_velocity = value;
      break;
    case TuningAxis::width:
      spec.target_w = int(std::lround(value));
      break;
    case TuningAxis::height:
      spec.target_h = int(std::lround(value));
      break;
  }
  return spec;
}

}  // namespace

std::vector<TuningPoint> tuning_experiment(TuningAxis axis,
                                           std::span<const double> grid,
                                           const PipelineParams& params,
                                           const SequenceSpec& base) {
  std::vector<TuningPoint> points;
  points.reserve(grid.size());
  for (double value : grid) {
    const SyntheticSequence seq(spec_for_value(axis, value, base));
    MotionPathway pathway(params, seq.width(), seq.height());
    const GroundTruth& truth = seq.ground_truth();
    if (truth.empty()) throw InvalidState("tuning sequence has no target");
    double sum = 0.0;
    long n = 0;
    for (int t = 0; t < seq.frame_count(); ++t) {
      // Response at the target: the strongest E within the 5 px matching
      // disc (the response blob trails the target center by a few pixels).
      const auto e =
          pathway.step_window(seq.frame(t), truth[t].x, truth[t].y, 5);
      if (t < pathway.warmup_frames()) continue;
      sum += *std::max_element(e.begin(), e.end());
      ++n;
    }
    points.push_back({value, n > 0 ? sum / double(n) : 0.0});
  }
  return points;
}

void write_tuning_csv(const std::vector<TuningPoint>& points, std::ostream& out) {
  out << "value,mean_response\n";
  for (const TuningPoint& p : points) {
    out << format_double(p.value) << ',' << format_double(p.mean_response)
        << '\n';
  }
}

void write_tuning_csv(const std::vector<TuningPoint>& points,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot create file: " + path);
  write_tuning_csv(points, out);
}

}  // namespace stmd
