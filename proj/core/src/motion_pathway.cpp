#include "stmd/motion_pathway.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "stmd/errors.hpp"

namespace stmd {

namespace {

struct Rect {
  int x0 = 0, y0 = 0, w = 0, h = 0;
  int x1() const { return x0 + w; }
  int y1() const { return y0 + h; }
};

Rect clamped_rect(int cx, int cy, int reach, int fw, int fh) {
  Rect r;
  r.x0 = std::max(cx - reach, 0);
  r.y0 = std::max(cy - reach, 0);
  r.w = std::min(cx + reach, fw - 1) - r.x0 + 1;
  r.h = std::min(cy + reach, fh - 1) - r.y0 + 1;
  return r;
}

Rect expand_clamped(const Rect& r, int margin, int fw, int fh) {
  Rect out;
  out.x0 = std::max(r.x0 - margin, 0);
  out.y0 = std::max(r.y0 - margin, 0);
  out.w = std::min(r.x1() + margin, fw) - out.x0;
  out.h = std::min(r.y1() + margin, fh) - out.y0;
  return out;
}

void check_positive_order_tau(int n, double tau, const char* which) {
  if (n < 1 || !(std::isfinite(tau) && tau > 0.0)) {
    throw InvalidParameter(std::string("invalid gamma spec for ") + which);
  }
}

}  // namespace

void PipelineParams::validate() const {
  if (!(std::isfinite(sigma1) && sigma1 > 0.0)) {
    throw InvalidParameter("sigma1 must be finite and positive");
  }
  check_positive_order_tau(n1, tau1, "band-pass fast lobe");
  check_positive_order_tau(n2, tau2, "band-pass slow lobe");
  check_positive_order_tau(n3, tau3, "delay (n3, tau3)");
  check_positive_order_tau(n4, tau4, "delay (n4, tau4)");
  check_positive_order_tau(n5, tau5, "delay (n5, tau5)");
  if (alpha1 < 1) throw InvalidParameter("alpha1 must be >= 1");
  if (!(std::isfinite(sigma2) && sigma2 > 0.0 && std::isfinite(sigma3) &&
        sigma3 > sigma2)) {
    throw InvalidParameter("inhibition kernel requires sigma3 > sigma2 > 0");
  }
  if (!std::isfinite(inhib_a) || !std::isfinite(inhib_b) ||
      !std::isfinite(inhib_e) || !std::isfinite(inhib_rho)) {
    throw InvalidParameter("inhibition constants must be finite");
  }
  if (std::isfinite(beta) && beta < 0.0) {
    throw InvalidParameter("beta must be >= 0");
  }
  if (!(gamma_mass_eps > 0.0 && gamma_mass_eps <= 0.01)) {
    throw InvalidParameter("gamma_mass_eps must be in (0, 0.01]");
  }
}

MedullaState::MedullaState(const PipelineParams& params)
    : inc_hist_(1), dec_hist_(1) {
  params.validate();
  d3_ = gamma_kernel(params.n3, params.tau3, params.gamma_mass_eps);
  d4_ = gamma_kernel(params.n4, params.tau4, params.gamma_mass_eps);
  d5_ = gamma_kernel(params.n5, params.tau5, params.gamma_mass_eps);
  const int depth = std::max({d3_.length(), d4_.length(), d5_.length()});
  inc_hist_ = FrameHistory(depth);
  dec_hist_ = FrameHistory(depth);
}

void MedullaState::push(const Frame& l, int frame_index) {
  if (frame_index != next_t_) {
    throw InvalidState("medulla frames must be consecutive");
  }
  Frame inc(l.width(), l.height());
  Frame dec(l.width(), l.height());
  const std::size_t n = l.data().size();
  const double* src = l.data().data();
  double* pi = inc.data().data();
  double* pd = dec.data().data();
  for (std::size_t i = 0; i < n; ++i) {
    pi[i] = std::max(src[i], 0.0);
    pd[i] = std::max(-src[i], 0.0);
  }
  inc_hist_.push(std::move(inc));
  dec_hist_.push(std::move(dec));
  ++next_t_;
}

Frame MedullaState::mi1_d3_rect(int x0, int y0, int w, int h) const {
  return temporal_conv_rect(inc_hist_, d3_, x0, y0, w, h);
}
Frame MedullaState::tm1_d4_rect(int x0, int y0, int w, int h) const {
  return temporal_conv_rect(dec_hist_, d4_, x0, y0, w, h);
}
Frame MedullaState::tm1_d5_rect(int x0, int y0, int w, int h) const {
  return temporal_conv_rect(dec_hist_, d5_, x0, y0, w, h);
}

Frame ommatidia(const Frame& raw, double sigma1) {
  return conv2(raw, gaussian_kernel(sigma1));
}

Frame lmc(const FrameHistory& smoothed_history, const TemporalKernel& bandpass) {
  return temporal_conv(smoothed_history, bandpass);
}

MedullaOutputs medulla_step(const Frame& l, MedullaState& state, int frame_index) {
  state.push(l, frame_index);
  MedullaOutputs out;
  out.tm3 = state.increase_history().at_lag(0);
  out.tm2 = state.decrease_history().at_lag(0);
  out.mi1_d3 = state.mi1_d3_rect(0, 0, l.width(), l.height());
  out.tm1_d4 = state.tm1_d4_rect(0, 0, l.width(), l.height());
  out.tm1_d5 = state.tm1_d5_rect(0, 0, l.width(), l.height());
  return out;
}

Frame stmd_correlate(const MedullaOutputs& m, int theta_index, int alpha1) {
  // The partner pixel trails the preferred direction: a target moving along
  // theta passes the partner first, so the partner's delayed channels line
  // up with the undelayed signal at (x, y) when motion follows theta.
  const PixelOffset off = direction_offset(theta_index, alpha1);
  const int w = m.tm3.width(), h = m.tm3.height();
  Frame d(w, h, 0.0);
  for (int y = 0; y < h; ++y) {
    const int py = y - off.dy;
    if (py < 0 || py >= h) continue;  // partner row out of frame -> zero
    const double* tm3 = m.tm3.row(y);
    const double* t4 = m.tm1_d4.row(y);
    const double* mi3 = m.mi1_d3.row(py);
    const double* t5 = m.tm1_d5.row(py);
    double* out = d.row(y);
    const int x_lo = std::max(0, off.dx);
    const int x_hi = std::min(w, w + off.dx);
    for (int x = x_lo; x < x_hi; ++x) {
      const int px = x - off.dx;
      out[x] = tm3[x] * (t4[x] + mi3[px]) * t5[px];
    }
  }
  return d;
}

Frame lateral_inhibit(const Frame& d, const SpatialKernel& ws) {
  Frame e = conv2(d, ws);
  for (double& v : e.data()) v = std::max(v, 0.0);
  return e;
}

double estimate_direction(const std::array<double, kNumDirections>& responses) {
  bool any = false;
  double sx = 0.0, sy = 0.0;
  for (int k = 0; k < kNumDirections; ++k) {
    if (responses[k] != 0.0) any = true;
    const double a = direction_angle(k);
    sx += responses[k] * std::cos(a);
    sy += responses[k] * std::sin(a);
  }
  if (!any) throw InvalidState("direction undefined for all-zero responses");
  double angle = std::atan2(sy, sx);
  if (angle < 0.0) angle += 2.0 * std::numbers::pi;
  return angle;
}

MotionPathway::MotionPathway(const PipelineParams& params, int width, int height)
    : params_(params),
      smoothed_hist_(1),
      medulla_(params),
      w_(width),
      h_(height) {
  params_.validate();
  blur_ = gaussian_kernel(params.sigma1);
  ws_ = inhibition_kernel(params.sigma2, params.sigma3, params.inhib_e,
                          params.inhib_rho, params.inhib_a, params.inhib_b);
  bandpass_ = bandpass_kernel(params.n1, params.tau1, params.n2, params.tau2,
                              params.gamma_mass_eps);
  smoothed_hist_ = FrameHistory(bandpass_.length());
  warmup_ = std::max(bandpass_.length(), medulla_.history_depth());
  for (int k = 0; k < kNumDirections; ++k) {
    offsets_[k] = direction_offset(k, params.alpha1);
  }
}

const Frame& MotionPathway::current_smoothed() const {
  if (smoothed_hist_.empty()) {
    throw InvalidState("no frame has been processed yet");
  }
  return smoothed_hist_.at_lag(0);
}

void MotionPathway::advance(const Frame& raw) {
  if (raw.width() != w_ || raw.height() != h_) {
    throw InvalidParameter("frame size does not match the pipeline");
  }
  smoothed_hist_.push(conv2(raw, blur_));
  l_ = lmc(smoothed_hist_, bandpass_);
  medulla_.push(l_, t_);
}

const DirectionalResponseField& MotionPathway::step(const Frame& raw) {
  advance(raw);
  MedullaOutputs m;
  m.tm3 = medulla_.increase_history().at_lag(0);
  m.mi1_d3 = medulla_.mi1_d3_rect(0, 0, w_, h_);
  m.tm1_d4 = medulla_.tm1_d4_rect(0, 0, w_, h_);
  m.tm1_d5 = medulla_.tm1_d5_rect(0, 0, w_, h_);
  for (int k = 0; k < kNumDirections; ++k) {
    d_[k] = stmd_correlate(m, k, params_.alpha1);
    field_.e[k] = lateral_inhibit(d_[k], ws_);
  }
  field_.t = t_;
  ++t_;
  return field_;
}

std::array<double, kNumDirections> MotionPathway::step_window(const Frame& raw,
                                                              int cx, int cy,
                                                              int probe_radius) {
  if (cx < 0 || cx >= w_ || cy < 0 || cy >= h_) {
    throw InvalidParameter("window center outside the frame");
  }
  if (probe_radius < 0) throw InvalidParameter("probe radius must be >= 0");
  advance(raw);

  const int rw = ws_.radius();
  const Rect re = clamped_rect(cx, cy, probe_radius, w_, h_);
  const Rect rd = expand_clamped(re, rw, w_, h_);
  const Rect rm = expand_clamped(rd, params_.alpha1, w_, h_);

  const Frame mi3 = medulla_.mi1_d3_rect(rm.x0, rm.y0, rm.w, rm.h);
  const Frame t4 = medulla_.tm1_d4_rect(rm.x0, rm.y0, rm.w, rm.h);
  const Frame t5 = medulla_.tm1_d5_rect(rm.x0, rm.y0, rm.w, rm.h);
  const Frame& tm3_full = medulla_.increase_history().at_lag(0);

  // Probe pixels: the disc of probe_radius around the center.
  std::vector<std::pair<int, int>> probes;
  const int pr2 = probe_radius * probe_radius;
  for (int y = re.y0; y < re.y1(); ++y) {
    for (int x = re.x0; x < re.x1(); ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= pr2) probes.emplace_back(x, y);
    }
  }

  std::vector<std::array<double, kNumDirections>> e(probes.size());
  Frame d(rd.w, rd.h);
  for (int k = 0; k < kNumDirections; ++k) {
    const PixelOffset off = offsets_[k];
    d.fill(0.0);
    for (int y = rd.y0; y < rd.y1(); ++y) {
      const int py = y - off.dy;
      if (py < 0 || py >= h_) continue;
      for (int x = rd.x0; x < rd.x1(); ++x) {
        const int px = x - off.dx;
        if (px < 0 || px >= w_) continue;
        d.at(x - rd.x0, y - rd.y0) = tm3_full.at(x, y) *
                                     (t4.at(x - rm.x0, y - rm.y0) +
                                      mi3.at(px - rm.x0, py - rm.y0)) *
                                     t5.at(px - rm.x0, py - rm.y0);
      }
    }
    // Inhibition per probe pixel, replicate-clamped like conv2.
    for (std::size_t p = 0; p < probes.size(); ++p) {
      const auto [qx0, qy0] = probes[p];
      double acc = 0.0;
      for (int j = -rw; j <= rw; ++j) {
        const int qy = std::clamp(qy0 - j, 0, h_ - 1);
        for (int i = -rw; i <= rw; ++i) {
          const int qx = std::clamp(qx0 - i, 0, w_ - 1);
          acc += ws_.at(i, j) * d.at(qx - rd.x0, qy - rd.y0);
        }
      }
      e[p][k] = std::max(acc, 0.0);
    }
  }
  ++t_;

  std::size_t best = 0;
  double best_top = -1.0;
  for (std::size_t p = 0; p < probes.size(); ++p) {
    const double top = *std::max_element(e[p].begin(), e[p].end());
    if (top > best_top) {
      best_top = top;
      best = p;
    }
  }
  return e[best];
}

}  // namespace stmd
