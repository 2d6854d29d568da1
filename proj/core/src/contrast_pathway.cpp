#include "stmd/contrast_pathway.hpp"

#include <cmath>

#include "stmd/errors.hpp"

namespace stmd {

namespace {

// Pooled field with `apron` extra replicate-extended pixels per side, so
// shifted samples near the frame border see the same values a convolution
// with the fused kernel would.
Frame pooled_extended(const Frame& smoothed, double eta, int apron) {
  return conv2_with_apron(smoothed, gaussian_kernel(eta), apron);
}

Frame t1_from_pooled(const Frame& pooled_ext, int apron, int w, int h,
                     const PixelOffset& off) {
  Frame out(w, h);
  for (int y = 0; y < h; ++y) {
    const double* ahead = pooled_ext.row(y + apron + off.dy) + apron + off.dx;
    const double* behind = pooled_ext.row(y + apron - off.dy) + apron - off.dx;
    double* dst = out.row(y);
    for (int x = 0; x < w; ++x) dst[x] = ahead[x] - behind[x];
  }
  return out;
}

}  // namespace

void ContrastParams::validate() const {
  if (!(std::isfinite(eta) && eta > 0.0)) {
    throw InvalidParameter("eta must be finite and positive");
  }
  if (alpha2 < 1) throw InvalidParameter("alpha2 must be >= 1");
}

Frame amc(const Frame& smoothed, double eta) {
  return conv2(smoothed, gaussian_kernel(eta));
}

Frame t1(const Frame& smoothed, double eta, int alpha2, int phi_index) {
  ContrastParams p{eta, alpha2};
  p.validate();
  const Frame pooled = pooled_extended(smoothed, eta, alpha2);
  return t1_from_pooled(pooled, alpha2, smoothed.width(), smoothed.height(),
                        orientation_offset(phi_index, alpha2));
}

ContrastField contrast_field(const Frame& smoothed, const ContrastParams& params,
                             int frame_index) {
  params.validate();
  ContrastField field;
  field.frame_index = frame_index;
  const Frame pooled = pooled_extended(smoothed, params.eta, params.alpha2);
  for (int k = 0; k < kNumOrientations; ++k) {
    field.t[k] = t1_from_pooled(pooled, params.alpha2, smoothed.width(),
                                smoothed.height(),
                                orientation_offset(k, params.alpha2));
  }
  return field;
}

}  // namespace stmd
