#pragma once

#include <array>
#include <vector>

#include "stmd/frame.hpp"

namespace stmd {

inline constexpr int kNumDirections = 8;    // preferred motion directions, k*pi/4
inline constexpr int kNumOrientations = 4;  // contrast orientations, k*pi/4

// Angle of direction/orientation index k, in radians.
double direction_angle(int theta_index);
double orientation_angle(int phi_index);

// Maps an angle onto the 4-orientation set {0, pi/4, pi/2, 3pi/4}.
// Throws InvalidParameter for angles outside the set.
int orientation_index(double phi);

// Integer pixel displacement alpha*(cos, sin) of a direction, rounded to
// the nearest pixel. y grows downward, so k*pi/4 with k in 1..3 points
// down-right to down-left.
struct PixelOffset {
  int dx = 0;
  int dy = 0;
};
PixelOffset direction_offset(int theta_index, int alpha);
PixelOffset orientation_offset(int phi_index, int alpha);

// Square grid of convolution taps with odd side 2*radius+1, anchored at
// the center tap. Taps are addressed by signed offsets in [-radius, radius].
// Kernels built as sampled Gaussians keep their 1-D separable factor.
class SpatialKernel {
 public:
  SpatialKernel() = default;
  SpatialKernel(int radius, std::vector<double> taps);

  int radius() const { return radius_; }
  int side() const { return 2 * radius_ + 1; }
  double at(int dx, int dy) const {
    return taps_[std::size_t(dy + radius_) * side() + (dx + radius_)];
  }
  double& at(int dx, int dy) {
    return taps_[std::size_t(dy + radius_) * side() + (dx + radius_)];
  }
  const std::vector<double>& taps() const { return taps_; }
  double sum() const;

  bool separable() const { return !factor_.empty(); }
  // 1-D factor f such that taps(dx,dy) == f[dx+r]*f[dy+r].
  const std::vector<double>& factor() const { return factor_; }
  void set_factor(std::vector<double> factor) { factor_ = std::move(factor); }

 private:
  int radius_ = 0;
  std::vector<double> taps_;
  std::vector<double> factor_;
};

// 1-D causal kernel over integer frame lags 0..length-1.
class TemporalKernel {
 public:
  TemporalKernel() = default;
  explicit TemporalKernel(std::vector<double> taps) : taps_(std::move(taps)) {}

  int length() const { return int(taps_.size()); }
  double at(int lag) const { return taps_[lag]; }
  const std::vector<double>& taps() const { return taps_; }
  double sum() const;

 private:
  std::vector<double> taps_;
};

// Isotropic Gaussian sampled at integer offsets out to ceil(3*sigma),
// renormalized to unit sum.
SpatialKernel gaussian_kernel(double sigma);

// Gamma kernel of the given order and time constant (in frames), sampled
// at integer lags. The length is the smallest lag where the remaining
// continuous tail mass drops below mass_eps; taps are renormalized to
// unit sum. tap[0] == 0 for order >= 2.
TemporalKernel gamma_kernel(int order, double tau, double mass_eps = 1e-3);

// Temporal band-pass filter: difference of two unit-mass Gamma kernels,
// zero-padded to the longer length. Sums to 0 (DC rejection).
TemporalKernel bandpass_kernel(int n1, double tau1, int n2, double tau2,
                               double mass_eps = 1e-3);

// Center-positive / surround-negative lateral inhibition kernel:
//   g = G_sigma2 - e*G_sigma3 - rho   (raw Gaussian values, unit mass each)
//   W = a*max(g,0) + b*min(g,0)
// sampled out to ceil(3*sigma3). Not renormalized.
SpatialKernel inhibition_kernel(double sigma2, double sigma3, double e,
                                double rho, double a, double b);

// Directional-derivative kernel for contrast extraction: difference of two
// unit-sum discrete Gaussians of width eta displaced by +-alpha2 along the
// orientation. Point-antisymmetric and zero-sum.
SpatialKernel t1_kernel(double eta, int alpha2, int phi_index);

// 2-D convolution with edge-replicate padding. The optimized path (shifted
// row accumulation, separable when the kernel allows) matches conv2_naive
// within floating-point reassociation error.
Frame conv2(const Frame& in, const SpatialKernel& kernel);

// Direct reference path: per-pixel double loop over taps with clamped
// source indices. Kept as the oracle for the optimized path.
Frame conv2_naive(const Frame& in, const SpatialKernel& kernel);

// Convolution evaluated on the replicate-extended domain: the output has
// `apron` extra pixels on every side, as if the input were extended by
// edge replication before convolving.
Frame conv2_with_apron(const Frame& in, const SpatialKernel& kernel, int apron);

// Causal temporal convolution over the stored history. Lags beyond the
// stored depth contribute nothing (warm-up semantics).
Frame temporal_conv(const FrameHistory& history, const TemporalKernel& kernel);

// Same, restricted to the pixel rectangle [x0, x0+w) x [y0, y0+h); the
// result is a w x h frame in window coordinates. Matches the full-frame
// values at the covered pixels.
Frame temporal_conv_rect(const FrameHistory& history, const TemporalKernel& kernel,
                         int x0, int y0, int w, int h);

}  // namespace stmd
