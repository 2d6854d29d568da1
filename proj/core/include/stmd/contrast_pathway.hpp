#pragma once

#include <array>

#include "stmd/frame.hpp"
#include "stmd/kernels.hpp"

namespace stmd {

struct ContrastParams {
  double eta = 1.5;  // pooling width
  int alpha2 = 3;    // sample displacement, pixels
  void validate() const;
};

// Signed directional contrast per pixel over the 4 orientations.
struct ContrastField {
  std::array<Frame, kNumOrientations> t;
  int frame_index = -1;

  std::array<double, kNumOrientations> at(int x, int y) const {
    std::array<double, kNumOrientations> v{};
    for (int k = 0; k < kNumOrientations; ++k) v[k] = t[k].at(x, y);
    return v;
  }
};

// Wide-field pooling of the smoothed frame (Gaussian of width eta).
Frame amc(const Frame& smoothed, double eta);

// Directional contrast along one orientation: difference of the pooled
// field sampled alpha2 pixels either side of the pixel, with edge
// replication. Equals convolution with t1_kernel(eta, alpha2, phi).
Frame t1(const Frame& smoothed, double eta, int alpha2, int phi_index);

// All four orientations sharing a single pooled field.
ContrastField contrast_field(const Frame& smoothed, const ContrastParams& params,
                             int frame_index);

}  // namespace stmd
