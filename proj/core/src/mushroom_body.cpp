#include "stmd/mushroom_body.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stmd/errors.hpp"

namespace stmd {

const char* to_string(TraceLabel label) {
  switch (label) {
    case TraceLabel::target: return "target";
    case TraceLabel::fake: return "fake";
    default: return "undecided";
  }
}

TraceLabel trace_label_from_string(const std::string& s) {
  if (s == "target") return TraceLabel::target;
  if (s == "fake") return TraceLabel::fake;
  if (s == "undecided") return TraceLabel::undecided;
  throw InvalidParameter("unknown trace label: " + s);
}

void ClassifierParams::validate() const {
  if (!(std::isfinite(gamma) && gamma > 0.0)) {
    throw InvalidParameter("gamma must be finite and positive");
  }
  if (sd_samples < 1) throw InvalidParameter("sd sample count must be >= 1");
  if (!(match_radius >= 1.0)) throw InvalidParameter("match radius must be >= 1");
  if (max_gap < 1) throw InvalidParameter("max gap must be >= 1");
  if (min_trace_len < 1) throw InvalidParameter("min trace length must be >= 1");
}

std::vector<Detection> detect(const DirectionalResponseField& field, double beta,
                              int nms_radius) {
  if (!(beta >= 0.0)) throw InvalidParameter("beta must be >= 0");
  if (nms_radius < 1) throw InvalidParameter("nms radius must be >= 1");
  const Frame& first = field.e[0];
  const int w = first.width(), h = first.height();

  // Per-pixel max over directions, ties to the smallest direction index.
  Frame emax(w, h);
  std::vector<uint8_t> arg(std::size_t(w) * h, 0);
  for (int y = 0; y < h; ++y) {
    double* mrow = emax.row(y);
    uint8_t* arow = arg.data() + std::size_t(y) * w;
    for (int x = 0; x < w; ++x) {
      double best = field.e[0].at(x, y);
      uint8_t best_k = 0;
      for (int k = 1; k < kNumDirections; ++k) {
        const double v = field.e[k].at(x, y);
        if (v > best) {
          best = v;
          best_k = uint8_t(k);
        }
      }
      mrow[x] = best;
      arow[x] = best_k;
    }
  }

  // Disc of neighbor offsets within the suppression radius.
  std::vector<PixelOffset> disc;
  for (int dy = -nms_radius; dy <= nms_radius; ++dy) {
    for (int dx = -nms_radius; dx <= nms_radius; ++dx) {
      if (dx == 0 && dy == 0) continue;
      if (dx * dx + dy * dy <= nms_radius * nms_radius) disc.push_back({dx, dy});
    }
  }

  std::vector<Detection> out;
  for (int y = 0; y < h; ++y) {
    const double* mrow = emax.row(y);
    for (int x = 0; x < w; ++x) {
      const double v = mrow[x];
      if (!(v > beta)) continue;
      bool is_max = true;
      for (const PixelOffset& o : disc) {
        const int qx = x + o.dx, qy = y + o.dy;
        if (qx < 0 || qx >= w || qy < 0 || qy >= h) continue;
        if (emax.at(qx, qy) > v) {
          is_max = false;
          break;
        }
      }
      if (is_max) {
        out.push_back({field.t, x, y, int(arg[std::size_t(y) * w + x]), v});
      }
    }
  }
  return out;
}

double population_sd(std::span<const double> xs) {
  if (xs.empty()) return 0.0;
  double mean = 0.0;
  for (double v : xs) mean += v;
  mean /= double(xs.size());
  double ss = 0.0;
  for (double v : xs) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / double(xs.size()));
}

std::array<double, kNumOrientations> trace_sd(const Trace& trace, int m) {
  std::array<double, kNumOrientations> out{};
  const int n = int(trace.contrast.size());
  const int take = std::min(m, n);
  if (take <= 0) return out;
  std::vector<double> series(take);
  for (int k = 0; k < kNumOrientations; ++k) {
    for (int i = 0; i < take; ++i) {
      series[i] = trace.contrast[n - take + i][k];
    }
    out[k] = population_sd(series);
  }
  return out;
}

TraceLabel classify(const Trace& trace, const ClassifierParams& params) {
  params.validate();
  if (trace.length() < params.min_trace_len) return TraceLabel::undecided;
  const auto sds = trace_sd(trace, params.sd_samples);
  const double top = *std::max_element(sds.begin(), sds.end());
  return top > params.gamma ? TraceLabel::target : TraceLabel::fake;
}

void sample_contrast(Trace& trace, const ContrastField& field) {
  if (trace.points.empty()) {
    throw InvalidState("cannot sample contrast for an empty trace");
  }
  const TracePoint& p = trace.points.back();
  if (p.t != field.frame_index) {
    throw InvalidState("contrast field frame does not match the trace point");
  }
  if (trace.contrast.size() != trace.points.size() - 1) {
    throw InvalidState("trace already sampled at this point");
  }
  trace.contrast.push_back(field.at(p.x, p.y));
}

TraceStore::TraceStore(const ClassifierParams& params) : params_(params) {
  params_.validate();
}

std::vector<int> TraceStore::update(int t, const std::vector<Detection>& detections) {
  if (t <= last_t_) {
    throw InvalidState("trace updates must use strictly increasing frames");
  }
  last_t_ = t;

  // Retire traces whose gap can no longer be bridged.
  std::vector<int> still_live;
  still_live.reserve(live_.size());
  for (int idx : live_) {
    if (t - traces_[idx].last_update <= params_.max_gap) still_live.push_back(idx);
  }
  live_.swap(still_live);

  // Candidate pairs within the match radius, cheapest distance first;
  // distance ties prefer the smaller detection index, then the older trace.
  struct Pair {
    double d2;
    int det;
    int live_pos;
  };
  const double r2 = params_.match_radius * params_.match_radius;
  std::vector<Pair> pairs;
  for (int lp = 0; lp < int(live_.size()); ++lp) {
    const Trace& tr = traces_[live_[lp]];
    const TracePoint& last = tr.points.back();
    for (int dj = 0; dj < int(detections.size()); ++dj) {
      const double dx = detections[dj].x - last.x;
      const double dy = detections[dj].y - last.y;
      const double d2 = dx * dx + dy * dy;
      if (d2 <= r2) pairs.push_back({d2, dj, lp});
    }
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.d2 != b.d2) return a.d2 < b.d2;
    if (a.det != b.det) return a.det < b.det;
    return a.live_pos < b.live_pos;
  });

  std::vector<int> trace_of_det(detections.size(), -1);
  std::vector<bool> trace_taken(live_.size(), false);
  for (const Pair& p : pairs) {
    if (trace_of_det[p.det] != -1 || trace_taken[p.live_pos]) continue;
    trace_taken[p.live_pos] = true;
    Trace& tr = traces_[live_[p.live_pos]];
    const Detection& d = detections[p.det];
    tr.points.push_back({t, d.x, d.y, d.theta_index});
    tr.last_update = t;
    trace_of_det[p.det] = tr.id;
  }

  // Births for unmatched detections.
  for (int dj = 0; dj < int(detections.size()); ++dj) {
    if (trace_of_det[dj] != -1) continue;
    Trace tr;
    tr.id = int(traces_.size());
    const Detection& d = detections[dj];
    tr.points.push_back({t, d.x, d.y, d.theta_index});
    tr.last_update = t;
    trace_of_det[dj] = tr.id;
    live_.push_back(tr.id);
    traces_.push_back(std::move(tr));
  }
  return trace_of_det;
}

void TraceStore::sample_contrast(const ContrastField& field) {
  for (int idx : live_) {
    Trace& tr = traces_[idx];
    if (tr.last_update == field.frame_index) {
      stmd::sample_contrast(tr, field);
    }
  }
}

void TraceStore::finalize_all() { live_.clear(); }

void TraceStore::classify_all(bool contrast_enabled) {
  for (Trace& tr : traces_) {
    if (!contrast_enabled) {
      tr.label = TraceLabel::target;
      continue;
    }
    tr.sd = trace_sd(tr, params_.sd_samples);
    tr.label = classify(tr, params_);
  }
}

}  // namespace stmd
