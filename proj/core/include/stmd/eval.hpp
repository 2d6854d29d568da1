#pragma once

#include <span>
#include <vector>

#include "stmd/config.hpp"
#include "stmd/records.hpp"
#include "stmd/synth.hpp"

namespace stmd {

// Detection/false-alarm rates built from integer counts.
struct EvalResult {
  double detection_rate = 0.0;   // true detections / actual targets
  double false_alarm_rate = 0.0; // false detections / frames
  long true_detections = 0;
  long actual_targets = 0;
  long false_detections = 0;
  long frames = 0;
};

struct ScoreOptions {
  double radius = 5.0;        // match distance, pixels
  int first_frame = 0;        // evaluation starts here (skips warm-up)
  bool include_undecided = false;
  bool all_labels = false;    // score every detection regardless of label
};

// Per frame, the nearest counted detection within the radius of the ground
// truth is the (single) true detection; every other counted detection is
// false. Frames before first_frame are ignored entirely.
EvalResult match_and_score(const std::vector<DetectionRecord>& detections,
                           const GroundTruth& truth,
                           const ScoreOptions& options = {});

// Average luminance contrast between a w x h rectangle at (x, y) (top-left)
// and its surrounding ring of margin d, normalized by 255.
double weber_contrast(const Frame& frame, int x, int y, int w, int h, int d = 10);

enum class TuningAxis { contrast, velocity, width, height };
TuningAxis tuning_axis_from_string(const std::string& s);

struct TuningPoint {
  double value = 0.0;
  double mean_response = 0.0;  // mean over post-warm-up frames of max-over-
                               // direction E at the ground-truth pixel
};

// Base sequence for the tuning sweeps: 5x5 black target at 250 px/s moving
// rightward across a static uniform white background.
SequenceSpec tuning_base_spec();

// Default sweep grid per axis.
std::vector<double> tuning_default_grid(TuningAxis axis);

// Generates one sequence per grid value and measures the motion-pathway
// response at the target.
std::vector<TuningPoint> tuning_experiment(TuningAxis axis,
                                           std::span<const double> grid,
                                           const PipelineParams& params,
                                           const SequenceSpec& base);

void write_tuning_csv(const std::vector<TuningPoint>& points, std::ostream& out);
void write_tuning_csv(const std::vector<TuningPoint>& points,
                      const std::string& path);

}  // namespace stmd
