#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "stmd/frame.hpp"

namespace stmd {

struct Waypoint {
  double x = 0.0;
  double y = 0.0;
};

// Description of a synthetic sequence: a horizontally panning background
// with a solid rectangular target moving along a piecewise-linear path.
//
// `background` accepts:
//   uniform:WxH:LUM       flat background, view size W x H
//   clutter:WxH[:N]       procedural cluttered background with N small
//                         target-like features (default 40), seeded
//   anything else         path of a PGM/PNG image; the view is the image
//                         size and panning wraps around horizontally
struct SequenceSpec {
  std::string background = "uniform:500x250:255";
  double bg_velocity = 250.0;      // px/s, positive = rightward
  int target_w = 5;
  int target_h = 5;
  double target_luminance = 0.0;   // [0, 255]
  double target_velocity = 250.0;  // px/s along the path
  std::vector<Waypoint> path;      // empty = no target
  int frames = 1000;
  double rate = 1000.0;            // frames per second
  std::uint64_t seed = 1;

  void validate() const;
};

struct GroundTruthEntry {
  int t = 0;
  int x = 0;
  int y = 0;
};
using GroundTruth = std::vector<GroundTruthEntry>;

// Parses `key = value` lines (keys: background, bg_velocity, target_w,
// target_h, target_luminance, target_velocity, path, frames, rate, seed).
// Unknown keys are an error. `path` is `x0,y0 : x1,y1 : ...`.
SequenceSpec parse_sequence_spec(std::istream& in);
SequenceSpec load_sequence_spec(const std::string& path);

// Deterministic cluttered background: smooth multi-scale shading, a few
// large structures, and `features` small dark speckles (the target-like
// features a detector should reject) separated from each other.
Frame make_cluttered_background(int width, int height, std::uint64_t seed,
                                int features);

// Deterministic frame generator. Frames hold integer luminance values, so
// writing them as 8-bit images and reading them back is lossless.
class SyntheticSequence {
 public:
  explicit SyntheticSequence(const SequenceSpec& spec);

  int width() const { return view_w_; }
  int height() const { return view_h_; }
  int frame_count() const { return spec_.frames; }
  const SequenceSpec& spec() const { return spec_; }

  Frame frame(int t) const;
  const GroundTruth& ground_truth() const { return truth_; }

 private:
  struct BlockPos {
    int tlx = 0, tly = 0;  // top-left of the composited block
    int cx = 0, cy = 0;    // recorded center
  };
  BlockPos block_at(int t) const;

  SequenceSpec spec_;
  Frame background_;
  int view_w_ = 0, view_h_ = 0;
  bool pan_wraps_ = false;  // view narrower than background: no seam
  std::vector<double> arc_;  // cumulative path length per segment start
  GroundTruth truth_;
};

}  // namespace stmd
