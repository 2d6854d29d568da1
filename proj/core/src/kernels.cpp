#include "stmd/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "stmd/errors.hpp"

namespace stmd {

namespace {

constexpr double kPi = std::numbers::pi;

double gaussian_value(double sigma, double x, double y) {
  return std::exp(-(x * x + y * y) / (2.0 * sigma * sigma)) /
         (2.0 * kPi * sigma * sigma);
}

void require_finite_positive(double v, const char* name) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw InvalidParameter(std::string(name) + " must be finite and positive");
  }
}

// Continuous tail mass of the Gamma kernel beyond time T: the kernel is a
// Gamma(order+1, tau/order) density, so the tail is the regularized upper
// incomplete gamma Q(order+1, order*T/tau).
double gamma_tail_mass(int order, double tau, double t) {
  const double x = order * t / tau;
  double term = 1.0;  // x^0 / 0!
  double sum = 1.0;
  for (int j = 1; j <= order; ++j) {
    term *= x / j;
    sum += term;
  }
  return std::exp(-x) * sum;
}

Frame replicate_pad(const Frame& in, int pad) {
  const int w = in.width(), h = in.height();
  Frame out(w + 2 * pad, h + 2 * pad);
  for (int py = 0; py < h + 2 * pad; ++py) {
    const int sy = std::clamp(py - pad, 0, h - 1);
    const double* src = in.row(sy);
    double* dst = out.row(py);
    for (int px = 0; px < pad; ++px) dst[px] = src[0];
    std::copy(src, src + w, dst + pad);
    for (int px = 0; px < pad; ++px) dst[w + pad + px] = src[w - 1];
  }
  return out;
}

}  // namespace

double direction_angle(int theta_index) {
  if (theta_index < 0 || theta_index >= kNumDirections) {
    throw InvalidParameter("direction index out of range");
  }
  return theta_index * (kPi / 4.0);
}

double orientation_angle(int phi_index) {
  if (phi_index < 0 || phi_index >= kNumOrientations) {
    throw InvalidParameter("orientation index out of range");
  }
  return phi_index * (kPi / 4.0);
}

int orientation_index(double phi) {
  for (int k = 0; k < kNumOrientations; ++k) {
    if (std::fabs(phi - k * (kPi / 4.0)) < 1e-9) return k;
  }
  throw InvalidParameter("orientation must be one of 0, pi/4, pi/2, 3pi/4");
}

PixelOffset direction_offset(int theta_index, int alpha) {
  const double a = direction_angle(theta_index);
  return {int(std::lround(alpha * std::cos(a))),
          int(std::lround(alpha * std::sin(a)))};
}

PixelOffset orientation_offset(int phi_index, int alpha) {
  const double a = orientation_angle(phi_index);
  return {int(std::lround(alpha * std::cos(a))),
          int(std::lround(alpha * std::sin(a)))};
}

SpatialKernel::SpatialKernel(int radius, std::vector<double> taps)
    : radius_(radius), taps_(std::move(taps)) {
  if (radius < 0) throw InvalidParameter("kernel radius must be non-negative");
  const std::size_t side = 2 * std::size_t(radius) + 1;
  if (taps_.size() != side * side) {
    throw InvalidParameter("kernel tap count does not match radius");
  }
}

double SpatialKernel::sum() const {
  return std::accumulate(taps_.begin(), taps_.end(), 0.0);
}

double TemporalKernel::sum() const {
  return std::accumulate(taps_.begin(), taps_.end(), 0.0);
}

SpatialKernel gaussian_kernel(double sigma) {
  require_finite_positive(sigma, "sigma");
  const int r = int(std::ceil(3.0 * sigma));
  const int side = 2 * r + 1;
  std::vector<double> taps(std::size_t(side) * side);
  double sum = 0.0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double v = gaussian_value(sigma, dx, dy);
      taps[std::size_t(dy + r) * side + (dx + r)] = v;
      sum += v;
    }
  }
  for (double& v : taps) v /= sum;
  SpatialKernel k(r, std::move(taps));

  std::vector<double> factor(side);
  double fsum = 0.0;
  for (int d = -r; d <= r; ++d) {
    factor[d + r] = std::exp(-(double(d) * d) / (2.0 * sigma * sigma));
    fsum += factor[d + r];
  }
  for (double& v : factor) v /= fsum;
  k.set_factor(std::move(factor));
  return k;
}

TemporalKernel gamma_kernel(int order, double tau, double mass_eps) {
  if (order < 1) throw InvalidParameter("gamma kernel order must be >= 1");
  require_finite_positive(tau, "tau");
  if (!(mass_eps > 0.0 && mass_eps <= 0.01)) {
    throw InvalidParameter("mass_eps must be in (0, 0.01]");
  }

  int length = 1;
  while (gamma_tail_mass(order, tau, length) >= mass_eps) ++length;

  const double log_norm =
      std::lgamma(double(order)) + (order + 1) * std::log(tau);
  std::vector<double> taps(length, 0.0);
  double sum = 0.0;
  // (order*t)^order vanishes at t = 0 for every order >= 1 -> tap[0] stays 0.
  for (int t = 1; t < length; ++t) {
    const double nt = double(order) * t;
    taps[t] = std::exp(order * std::log(nt) - nt / tau - log_norm);
    sum += taps[t];
  }
  if (sum <= 0.0) throw InvalidParameter("gamma kernel collapsed to zero mass");
  for (double& v : taps) v /= sum;
  return TemporalKernel(std::move(taps));
}

TemporalKernel bandpass_kernel(int n1, double tau1, int n2, double tau2,
                               double mass_eps) {
  const TemporalKernel fast = gamma_kernel(n1, tau1, mass_eps);
  const TemporalKernel slow = gamma_kernel(n2, tau2, mass_eps);
  const int length = std::max(fast.length(), slow.length());
  std::vector<double> taps(length, 0.0);
  for (int t = 0; t < fast.length(); ++t) taps[t] += fast.at(t);
  for (int t = 0; t < slow.length(); ++t) taps[t] -= slow.at(t);
  return TemporalKernel(std::move(taps));
}

SpatialKernel inhibition_kernel(double sigma2, double sigma3, double e,
                                double rho, double a, double b) {
  require_finite_positive(sigma2, "sigma2");
  require_finite_positive(sigma3, "sigma3");
  if (!(sigma3 > sigma2)) {
    throw InvalidParameter("inhibition kernel requires sigma3 > sigma2");
  }
  if (!std::isfinite(e) || !std::isfinite(rho) || !std::isfinite(a) ||
      !std::isfinite(b)) {
    throw InvalidParameter("inhibition kernel constants must be finite");
  }
  const int r = int(std::ceil(3.0 * sigma3));
  const int side = 2 * r + 1;
  std::vector<double> taps(std::size_t(side) * side);
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      const double g =
          gaussian_value(sigma2, dx, dy) - e * gaussian_value(sigma3, dx, dy) - rho;
      taps[std::size_t(dy + r) * side + (dx + r)] =
          a * std::max(g, 0.0) + b * std::min(g, 0.0);
    }
  }
  return SpatialKernel(r, std::move(taps));
}

SpatialKernel t1_kernel(double eta, int alpha2, int phi_index) {
  require_finite_positive(eta, "eta");
  if (alpha2 < 1) throw InvalidParameter("alpha2 must be >= 1");
  const PixelOffset off = orientation_offset(phi_index, alpha2);

  // Built from the renormalized discrete Gaussian so that convolving with
  // this kernel reproduces the difference of two pooled (AMC) samples.
  const SpatialKernel wa = gaussian_kernel(eta);
  const int ra = wa.radius();
  const int r = ra + alpha2;
  const int side = 2 * r + 1;
  std::vector<double> taps(std::size_t(side) * side, 0.0);
  auto wa_at = [&](int dx, int dy) -> double {
    if (dx < -ra || dx > ra || dy < -ra || dy > ra) return 0.0;
    return wa.at(dx, dy);
  };
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      taps[std::size_t(dy + r) * side + (dx + r)] =
          wa_at(dx + off.dx, dy + off.dy) - wa_at(dx - off.dx, dy - off.dy);
    }
  }
  return SpatialKernel(r, std::move(taps));
}

namespace {

void check_conv_args(const Frame& in, const SpatialKernel& k) {
  if (in.empty()) throw InvalidParameter("conv2: empty frame");
  if (k.side() > in.width() || k.side() > in.height()) {
    throw InvalidParameter("conv2: kernel larger than frame");
  }
}

// pad carries a margin of r pixels around the out_w x out_h output grid:
// pad(px, py) corresponds to output coordinates (px - r, py - r).
Frame conv2_direct_padded(const Frame& pad, const SpatialKernel& k, int out_w,
                          int out_h) {
  const int r = k.radius();
  Frame out(out_w, out_h, 0.0);
  for (int oy = 0; oy < out_h; ++oy) {
    double* out_row = out.row(oy);
    for (int j = -r; j <= r; ++j) {
      const double* pad_row = pad.row(oy + r - j);
      for (int i = -r; i <= r; ++i) {
        const double w = k.at(i, j);
        const double* src = pad_row + (r - i);
        for (int ox = 0; ox < out_w; ++ox) out_row[ox] += w * src[ox];
      }
    }
  }
  return out;
}

Frame conv2_separable_padded(const Frame& pad, const SpatialKernel& k,
                             int out_w, int out_h) {
  const int r = k.radius();
  const std::vector<double>& f = k.factor();
  // Horizontal pass over every padded row the vertical pass will read.
  Frame tmp(out_w, out_h + 2 * r, 0.0);
  for (int ty = 0; ty < out_h + 2 * r; ++ty) {
    const double* pad_row = pad.row(ty);
    double* tmp_row = tmp.row(ty);
    for (int i = -r; i <= r; ++i) {
      const double w = f[i + r];
      const double* src = pad_row + (r - i);
      for (int ox = 0; ox < out_w; ++ox) tmp_row[ox] += w * src[ox];
    }
  }
  Frame out(out_w, out_h, 0.0);
  for (int oy = 0; oy < out_h; ++oy) {
    double* out_row = out.row(oy);
    for (int j = -r; j <= r; ++j) {
      const double w = f[j + r];
      const double* src = tmp.row(oy + r - j);
      for (int ox = 0; ox < out_w; ++ox) out_row[ox] += w * src[ox];
    }
  }
  return out;
}

}  // namespace

Frame conv2_with_apron(const Frame& in, const SpatialKernel& kernel, int apron) {
  check_conv_args(in, kernel);
  if (apron < 0) throw InvalidParameter("conv2: negative apron");
  const int r = kernel.radius();
  // Margin r + apron around the input grid doubles as margin r around the
  // (apron-extended) output grid.
  const Frame pad = replicate_pad(in, r + apron);
  const int out_w = in.width() + 2 * apron;
  const int out_h = in.height() + 2 * apron;
  return kernel.separable() ? conv2_separable_padded(pad, kernel, out_w, out_h)
                            : conv2_direct_padded(pad, kernel, out_w, out_h);
}

Frame conv2(const Frame& in, const SpatialKernel& kernel) {
  return conv2_with_apron(in, kernel, 0);
}

Frame conv2_naive(const Frame& in, const SpatialKernel& kernel) {
  check_conv_args(in, kernel);
  const int r = kernel.radius();
  const int w = in.width(), h = in.height();
  Frame out(w, h, 0.0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double acc = 0.0;
      for (int j = -r; j <= r; ++j) {
        const int sy = std::clamp(y - j, 0, h - 1);
        for (int i = -r; i <= r; ++i) {
          const int sx = std::clamp(x - i, 0, w - 1);
          acc += kernel.at(i, j) * in.at(sx, sy);
        }
      }
      out.at(x, y) = acc;
    }
  }
  return out;
}

Frame temporal_conv(const FrameHistory& history, const TemporalKernel& kernel) {
  if (history.empty()) throw InvalidState("temporal_conv: empty history");
  const Frame& newest = history.at_lag(0);
  Frame out(newest.width(), newest.height(), 0.0);
  const int lags = std::min(kernel.length(), history.size());
  double* dst = out.data().data();
  const std::size_t n = out.data().size();
  for (int k = 0; k < lags; ++k) {
    const double w = kernel.at(k);
    const double* src = history.at_lag(k).data().data();
    for (std::size_t i = 0; i < n; ++i) dst[i] += w * src[i];
  }
  return out;
}

Frame temporal_conv_rect(const FrameHistory& history, const TemporalKernel& kernel,
                         int x0, int y0, int w, int h) {
  if (history.empty()) throw InvalidState("temporal_conv: empty history");
  const Frame& newest = history.at_lag(0);
  if (x0 < 0 || y0 < 0 || w <= 0 || h <= 0 || x0 + w > newest.width() ||
      y0 + h > newest.height()) {
    throw InvalidParameter("temporal_conv_rect: window out of bounds");
  }
  Frame out(w, h, 0.0);
  const int lags = std::min(kernel.length(), history.size());
  for (int k = 0; k < lags; ++k) {
    const double wk = kernel.at(k);
    const Frame& f = history.at_lag(k);
    for (int y = 0; y < h; ++y) {
      const double* src = f.row(y0 + y) + x0;
      double* dst = out.row(y);
      for (int x = 0; x < w; ++x) dst[x] += wk * src[x];
    }
  }
  return out;
}

}  // namespace stmd
