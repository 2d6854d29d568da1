#pragma once

#include <array>
#include <limits>

#include "stmd/frame.hpp"
#include "stmd/kernels.hpp"

namespace stmd {

// Motion pathway parameters. Defaults follow the reference tuning for
// 1000 Hz input; the detection threshold beta has no default and must be
// configured explicitly before detections are requested.
struct PipelineParams {
  double sigma1 = 1.0;  // ommatidium blur

  int n1 = 2;           // band-pass: fast gamma
  double tau1 = 3.0;
  int n2 = 6;           // band-pass: slow gamma
  double tau2 = 9.0;

  int alpha1 = 3;       // correlation partner distance, pixels

  int n3 = 3;           // delay for the luminance-increase partner channel
  double tau3 = 15.0;
  int n4 = 5;           // first delay for the luminance-decrease channel
  double tau4 = 25.0;
  int n5 = 8;           // second delay for the luminance-decrease channel
  double tau5 = 40.0;

  double inhib_a = 1.0;  // gain on the excitatory center
  double inhib_b = 3.0;  // gain on the inhibitory surround
  double inhib_e = 1.0;
  double inhib_rho = 0.0;
  double sigma2 = 1.5;
  double sigma3 = 3.0;

  double beta = std::numeric_limits<double>::quiet_NaN();  // detection threshold

  double gamma_mass_eps = 1e-3;  // temporal kernel truncation

  void validate() const;  // throws InvalidParameter
};

// Rectified luminance-change channels and their delayed versions for the
// current frame.
struct MedullaOutputs {
  Frame tm3;     // [L]+  luminance increase
  Frame tm2;     // [-L]+ luminance decrease
  Frame mi1_d3;  // delayed tm3, (n3, tau3)
  Frame tm1_d4;  // delayed tm2, (n4, tau4)
  Frame tm1_d5;  // delayed tm2, (n5, tau5)
};

// Ring histories of the rectified band-pass output, deep enough for the
// longest delay kernel. Frames must be pushed strictly in order.
class MedullaState {
 public:
  explicit MedullaState(const PipelineParams& params);

  int next_frame_index() const { return next_t_; }
  int history_depth() const { return inc_hist_.capacity(); }

  // Rectifies l into the increase/decrease histories and advances the
  // frame counter. Throws InvalidState on a non-consecutive frame index.
  void push(const Frame& l, int frame_index);

  // Delayed channels over a window (full frame = the whole rect).
  Frame mi1_d3_rect(int x0, int y0, int w, int h) const;
  Frame tm1_d4_rect(int x0, int y0, int w, int h) const;
  Frame tm1_d5_rect(int x0, int y0, int w, int h) const;

  const FrameHistory& increase_history() const { return inc_hist_; }
  const FrameHistory& decrease_history() const { return dec_hist_; }

 private:
  FrameHistory inc_hist_;
  FrameHistory dec_hist_;
  TemporalKernel d3_, d4_, d5_;
  int next_t_ = 0;
};

// Per-pixel directional response over the 8 preferred directions.
struct DirectionalResponseField {
  std::array<Frame, kNumDirections> e;
  int t = -1;

  std::array<double, kNumDirections> at(int x, int y) const {
    std::array<double, kNumDirections> v{};
    for (int k = 0; k < kNumDirections; ++k) v[k] = e[k].at(x, y);
    return v;
  }
};

// --- stage operations ---

// Spatial smoothing of the raw luminance frame.
Frame ommatidia(const Frame& raw, double sigma1);

// Temporal band-pass over the smoothed history: positive = luminance
// increase, negative = decrease.
Frame lmc(const FrameHistory& smoothed_history, const TemporalKernel& bandpass);

// Rectification plus delayed channels; advances the state by one frame.
MedullaOutputs medulla_step(const Frame& l, MedullaState& state, int frame_index);

// Directional correlation of the rectified channels at a pixel and its
// trailing partner alpha1 pixels back along the preferred direction. An
// out-of-frame partner contributes zero.
Frame stmd_correlate(const MedullaOutputs& m, int theta_index, int alpha1);

// Surround inhibition of the correlation output, clamped at zero.
Frame lateral_inhibit(const Frame& d, const SpatialKernel& ws);

// Direction of the response-weighted vector sum, in [0, 2pi). Throws
// InvalidState when every response is zero.
double estimate_direction(const std::array<double, kNumDirections>& responses);

// Streaming motion pathway: owns the smoothing/band-pass/delay state and
// produces the inhibited directional field frame by frame.
class MotionPathway {
 public:
  MotionPathway(const PipelineParams& params, int width, int height);

  // Full-field step: all eight direction planes of E.
  const DirectionalResponseField& step(const Frame& raw);

  // Windowed step: advances every history exactly like step(), but
  // evaluates correlation and inhibition only around (cx, cy). Returns E at
  // the strongest pixel within probe_radius of the center (the response to
  // a target trails its center by a few pixels, so probing a small disc is
  // how "response at the target" is measured). probe_radius 0 gives E at
  // the center pixel itself; values match the full-field path exactly.
  std::array<double, kNumDirections> step_window(const Frame& raw, int cx, int cy,
                                                 int probe_radius = 0);

  int frames_seen() const { return t_; }
  // Frames to discard before outputs are trustworthy: the longest
  // temporal kernel length.
  int warmup_frames() const { return warmup_; }
  bool in_warmup() const { return t_ <= warmup_; }

  const DirectionalResponseField& field() const { return field_; }
  const std::array<Frame, kNumDirections>& correlation() const { return d_; }
  // Smoothed version of the newest frame (input for the contrast stage).
  const Frame& current_smoothed() const;
  const PipelineParams& params() const { return params_; }

 private:
  void advance(const Frame& raw);  // smoothing, band-pass, rectify

  PipelineParams params_;
  SpatialKernel blur_;
  SpatialKernel ws_;
  TemporalKernel bandpass_;
  FrameHistory smoothed_hist_;
  MedullaState medulla_;
  Frame l_;
  std::array<Frame, kNumDirections> d_;
  DirectionalResponseField field_;
  std::array<PixelOffset, kNumDirections> offsets_;
  int w_, h_;
  int t_ = 0;
  int warmup_ = 0;
};

}  // namespace stmd
