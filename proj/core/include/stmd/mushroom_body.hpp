#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "stmd/contrast_pathway.hpp"
#include "stmd/motion_pathway.hpp"

namespace stmd {

enum class TraceLabel { undecided, target, fake };
const char* to_string(TraceLabel label);
TraceLabel trace_label_from_string(const std::string& s);

struct ClassifierParams {
  double gamma = 10.0;        // SD threshold separating targets from fakes
  int sd_samples = 1000;      // samples entering the SD (m)
  double match_radius = 8.0;  // trace-linking radius, pixels
  int max_gap = 3;            // frames a trace may stay unmatched
  int min_trace_len = 1000;   // points required before classification
  void validate() const;
};

struct Detection {
  int t = 0;
  int x = 0, y = 0;
  int theta_index = 0;   // argmax direction at the pixel
  double response = 0.0; // max-over-theta response
};

struct TracePoint {
  int t = 0;
  int x = 0, y = 0;
  int theta_index = 0;
};

// A linked sequence of detections with the directional contrast sampled
// at each point (one 4-vector per point when the contrast stage runs).
struct Trace {
  int id = -1;
  std::vector<TracePoint> points;
  std::vector<std::array<double, kNumOrientations>> contrast;
  int last_update = -1;
  TraceLabel label = TraceLabel::undecided;
  std::array<double, kNumOrientations> sd{};  // filled by classification

  int length() const { return int(points.size()); }
};

// Thresholds the per-pixel max over directions and keeps local maxima
// within nms_radius (Euclidean). The direction of a detection is the
// smallest index attaining the pixel maximum. Detections come out in
// raster order.
std::vector<Detection> detect(const DirectionalResponseField& field, double beta,
                              int nms_radius = 5);

// Two-pass population standard deviation (divisor n).
double population_sd(std::span<const double> xs);

// Per-orientation SD over the last min(m, length) contrast samples.
std::array<double, kNumOrientations> trace_sd(const Trace& trace, int m);

// Labels a trace by the largest per-orientation SD: target when it
// exceeds gamma, fake otherwise. Traces shorter than min_trace_len stay
// undecided.
TraceLabel classify(const Trace& trace, const ClassifierParams& params);

// Appends the contrast 4-vector at the trace's newest point. The field's
// frame index must match that point's frame.
void sample_contrast(Trace& trace, const ContrastField& field);

// Frame-ordered trace store: greedy nearest association of live traces to
// detections, births for unmatched detections, retirement after max_gap
// unmatched frames.
class TraceStore {
 public:
  explicit TraceStore(const ClassifierParams& params);

  // Associates detections to live traces at frame t (strictly increasing).
  // Returns the trace id each detection landed in, parallel to detections.
  std::vector<int> update(int t, const std::vector<Detection>& detections);

  // Samples the contrast field for every trace extended at the field's frame.
  void sample_contrast(const ContrastField& field);

  void finalize_all();

  // Classifies every trace; with the contrast pathway disabled every trace
  // is labeled target (pass-through mode).
  void classify_all(bool contrast_enabled);

  const std::vector<Trace>& traces() const { return traces_; }
  std::vector<Trace>& traces() { return traces_; }
  int live_count() const { return int(live_.size()); }
  const ClassifierParams& params() const { return params_; }

 private:
  ClassifierParams params_;
  std::vector<Trace> traces_;
  std::vector<int> live_;  // indices into traces_, in creation order
  int last_t_ = -1;
};

}  // namespace stmd
