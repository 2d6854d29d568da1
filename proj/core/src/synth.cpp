#include "stmd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "stmd/errors.hpp"
#include "stmd/image_io.hpp"
#include "stmd/kernels.hpp"
#include "text_util.hpp"

namespace stmd {

namespace {

using detail::parse_double;
using detail::parse_int;
using detail::split;
using detail::trim;

// Deterministic xorshift-based uniforms so generated data does not depend
// on the standard library's distribution implementations.
struct Rng {
  std::uint64_t s;
  explicit Rng(std::uint64_t seed) : s(seed * 2685821657736338717ULL + 1) {}
  std::uint64_t next() {
    s ^= s << 13;
    s ^= s >> 7;
    s ^= s << 17;
    return s;
  }
  double u01() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * u01(); }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + int(next() % std::uint64_t(hi - lo + 1));
  }
};

std::vector<Waypoint> parse_path(std::string_view text) {
  std::vector<Waypoint> path;
  for (std::string_view part : split(text, ':')) {
    part = trim(part);
    if (part.empty()) continue;
    const auto xy = split(part, ',');
    if (xy.size() != 2) {
      throw InvalidParameter("path waypoints must be 'x,y' pairs: '" +
                             std::string(part) + "'");
    }
    path.push_back({parse_double(xy[0], "path x"), parse_double(xy[1], "path y")});
  }
  return path;
}

struct BackgroundSpec {
  enum class Kind { uniform, clutter, file } kind = Kind::uniform;
  int view_w = 0, view_h = 0;
  double luminance = 255.0;
  int features = 40;
  std::string file;
};

BackgroundSpec parse_background(const std::string& value) {
  BackgroundSpec bg;
  auto parse_dims = [](std::string_view dims) {
    const auto wh = split(dims, 'x');
    if (wh.size() != 2) {
      throw InvalidParameter("background size must be WxH: '" +
                             std::string(dims) + "'");
    }
    return std::pair<int, int>{int(parse_int(wh[0], "background width")),
                               int(parse_int(wh[1], "background height"))};
  };
  if (value.starts_with("uniform:")) {
    bg.kind = BackgroundSpec::Kind::uniform;
    const auto parts = split(std::string_view(value).substr(8), ':');
    if (parts.empty() || parts.size() > 2) {
      throw InvalidParameter("uniform background is uniform:WxH:LUM");
    }
    std::tie(bg.view_w, bg.view_h) = parse_dims(parts[0]);
    bg.luminance = parts.size() == 2 ? parse_double(parts[1], "luminance") : 255.0;
  } else if (value.starts_with("clutter:")) {
    bg.kind = BackgroundSpec::Kind::clutter;
    const auto parts = split(std::string_view(value).substr(8), ':');
    if (parts.empty() || parts.size() > 2) {
      throw InvalidParameter("clutter background is clutter:WxH[:FEATURES]");
    }
    std::tie(bg.view_w, bg.view_h) = parse_dims(parts[0]);
    if (parts.size() == 2) bg.features = int(parse_int(parts[1], "features"));
  } else {
    bg.kind = BackgroundSpec::Kind::file;
    bg.file = value;
  }
  return bg;
}

}  // namespace

void SequenceSpec::validate() const {
  if (frames <= 0) throw InvalidParameter("frames must be positive");
  if (!(std::isfinite(rate) && rate > 0.0)) {
    throw InvalidParameter("rate must be finite and positive");
  }
  if (target_w < 1 || target_h < 1) {
    throw InvalidParameter("target size must be at least 1x1");
  }
  if (!(target_luminance >= 0.0 && target_luminance <= 255.0)) {
    throw InvalidParameter("target luminance must be in [0, 255]");
  }
  if (!std::isfinite(bg_velocity) || !std::isfinite(target_velocity)) {
    throw InvalidParameter("velocities must be finite");
  }
  if (background.empty()) throw InvalidParameter("background must be set");
}

SequenceSpec parse_sequence_spec(std::istream& in) {
  SequenceSpec spec;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    const auto eq = sv.find('=');
    if (eq == std::string_view::npos) {
      throw InvalidParameter("sequence spec line " + std::to_string(line_no) +
                             " is not 'key = value'");
    }
    const std::string key(trim(sv.substr(0, eq)));
    const std::string value(trim(sv.substr(eq + 1)));
    if (key == "background") {
      spec.background = value;
    } else if (key == "bg_velocity") {
      spec.bg_velocity = parse_double(value, "bg_velocity");
    } else if (key == "target_w") {
      spec.target_w = int(parse_int(value, "target_w"));
    } else if (key == "target_h") {
      spec.target_h = int(parse_int(value, "target_h"));
    } else if (key == "target_luminance") {
      spec.target_luminance = parse_double(value, "target_luminance");
    } else if (key == "target_velocity") {
      spec.target_velocity = parse_double(value, "target_velocity");
    } else if (key == "path") {
      spec.path = parse_path(value);
    } else if (key == "frames") {
      spec.frames = int(parse_int(value, "frames"));
    } else if (key == "rate") {
      spec.rate = parse_double(value, "rate");
    } else if (key == "seed") {
      spec.seed = std::uint64_t(parse_int(value, "seed"));
    } else {
      throw InvalidParameter("unknown sequence spec key: " + key);
    }
  }
  return spec;
}

SequenceSpec load_sequence_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open sequence spec: " + path);
  return parse_sequence_spec(in);
}

Frame make_cluttered_background(int width, int height, std::uint64_t seed,
                                int features) {
  if (width <= 0 || height <= 0) {
    throw InvalidParameter("background dimensions must be positive");
  }
  if (features < 0) throw InvalidParameter("feature count must be >= 0");
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);

  // Smooth shading: products of low-frequency sinusoids.
  struct Wave {
    double ax, ay, px, py, amp;
  };
  std::vector<Wave> waves;
  for (int i = 0; i < 5; ++i) {
    waves.push_back({rng.uniform(0, 2 * std::numbers::pi),
                     rng.uniform(0, 2 * std::numbers::pi),
                     rng.uniform(40, 280), rng.uniform(30, 180),
                     rng.uniform(16, 36)});
  }
  Frame bg(width, height);
  for (int y = 0; y < height; ++y) {
    double* row = bg.row(y);
    for (int x = 0; x < width; ++x) {
      double v = 165.0;
      for (const Wave& wv : waves) {
        v += wv.amp * std::sin(2 * std::numbers::pi * x / wv.px + wv.ax) *
             std::sin(2 * std::numbers::pi * y / wv.py + wv.ay);
      }
      row[x] = v;
    }
  }

  // A few large structures (the kind lateral inhibition should reject).
  const int structures = std::max(4, width / 160);
  for (int i = 0; i < structures; ++i) {
    const int sw = rng.uniform_int(24, 70);
    const int sh = rng.uniform_int(24, 70);
    const int x0 = rng.uniform_int(0, std::max(0, width - sw - 1));
    const int y0 = rng.uniform_int(0, std::max(0, height - sh - 1));
    const double shift = rng.uniform(30, 70) * (rng.u01() < 0.5 ? -1.0 : 1.0);
    const bool ellipse = rng.u01() < 0.5;
    for (int y = y0; y < y0 + sh && y < height; ++y) {
      for (int x = x0; x < x0 + sw && x < width; ++x) {
        if (ellipse) {
          const double ex = (x - (x0 + sw / 2.0)) / (sw / 2.0);
          const double ey = (y - (y0 + sh / 2.0)) / (sh / 2.0);
          if (ex * ex + ey * ey > 1.0) continue;
        }
        bg.at(x, y) += shift;
      }
    }
  }

  // Small target-like speckles, kept apart so their motion traces stay
  // distinct.
  std::vector<std::pair<int, int>> placed;
  const int min_sep2 = 24 * 24;
  int attempts = 0;
  while (int(placed.size()) < features && attempts < features * 200) {
    ++attempts;
    const int sx = rng.uniform_int(3, width - 7);
    const int sy = rng.uniform_int(3, height - 7);
    bool ok = true;
    for (const auto& p : placed) {
      const int dx = p.first - sx, dy = p.second - sy;
      if (dx * dx + dy * dy < min_sep2) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    placed.emplace_back(sx, sy);
    const int size = rng.uniform_int(3, 5);
    const double lum = rng.uniform(30, 80);
    for (int y = sy; y < sy + size && y < height; ++y) {
      for (int x = sx; x < sx + size && x < width; ++x) {
        bg.at(x, y) = lum;
      }
    }
  }

  // Band-limit like a photograph: real backgrounds are optically blurred,
  // which keeps the pooled contrast field smooth under 1 px panning steps.
  bg = conv2(bg, gaussian_kernel(1.2));

  for (double& v : bg.data()) v = std::clamp(std::round(v), 0.0, 255.0);
  return bg;
}

SyntheticSequence::SyntheticSequence(const SequenceSpec& spec) : spec_(spec) {
  spec_.validate();
  const BackgroundSpec bg = parse_background(spec_.background);
  const int max_offset =
      int(std::ceil(std::fabs(spec_.bg_velocity) * spec_.frames / spec_.rate)) + 2;
  switch (bg.kind) {
    case BackgroundSpec::Kind::uniform:
      view_w_ = bg.view_w;
      view_h_ = bg.view_h;
      background_ = Frame(view_w_, view_h_, std::round(bg.luminance));
      pan_wraps_ = true;
      break;
    case BackgroundSpec::Kind::clutter:
      view_w_ = bg.view_w;
      view_h_ = bg.view_h;
      background_ = make_cluttered_background(view_w_ + max_offset, view_h_,
                                              spec_.seed, bg.features);
      pan_wraps_ = false;
      break;
    case BackgroundSpec::Kind::file:
      background_ = read_image(bg.file);
      view_w_ = background_.width();
      view_h_ = background_.height();
      pan_wraps_ = true;
      break;
  }
  if (view_w_ <= 0 || view_h_ <= 0) {
    throw InvalidParameter("view window is empty");
  }

  arc_.assign(1, 0.0);
  for (std::size_t i = 1; i < spec_.path.size(); ++i) {
    const double dx = spec_.path[i].x - spec_.path[i - 1].x;
    const double dy = spec_.path[i].y - spec_.path[i - 1].y;
    arc_.push_back(arc_.back() + std::hypot(dx, dy));
  }

  if (!spec_.path.empty()) {
    truth_.reserve(spec_.frames);
    for (int t = 0; t < spec_.frames; ++t) {
      const BlockPos b = block_at(t);
      if (b.tlx < 0 || b.tly < 0 || b.tlx + spec_.target_w > view_w_ ||
          b.tly + spec_.target_h > view_h_) {
        throw InvalidParameter("target leaves the frame at frame " +
                               std::to_string(t));
      }
      truth_.push_back({t, b.cx, b.cy});
    }
  }
}

SyntheticSequence::BlockPos SyntheticSequence::block_at(int t) const {
  double px = spec_.path.front().x;
  double py = spec_.path.front().y;
  if (spec_.path.size() > 1) {
    double s = spec_.target_velocity * t / spec_.rate;
    s = std::clamp(s, 0.0, arc_.back());  // target holds at the path end
    std::size_t seg = 1;
    while (seg + 1 < arc_.size() && arc_[seg] < s) ++seg;
    const double seg_len = arc_[seg] - arc_[seg - 1];
    const double u = seg_len > 0.0 ? (s - arc_[seg - 1]) / seg_len : 0.0;
    px = spec_.path[seg - 1].x + u * (spec_.path[seg].x - spec_.path[seg - 1].x);
    py = spec_.path[seg - 1].y + u * (spec_.path[seg].y - spec_.path[seg - 1].y);
  }
  BlockPos b;
  const int cxr = int(std::lround(px));
  const int cyr = int(std::lround(py));
  b.tlx = cxr - (spec_.target_w - 1) / 2;
  b.tly = cyr - (spec_.target_h - 1) / 2;
  b.cx = b.tlx + (spec_.target_w - 1) / 2;
  b.cy = b.tly + (spec_.target_h - 1) / 2;
  return b;
}

Frame SyntheticSequence::frame(int t) const {
  if (t < 0 || t >= spec_.frames) {
    throw InvalidParameter("frame index out of range");
  }
  const int bg_w = background_.width();
  const int offset = int(std::lround(spec_.bg_velocity * t / spec_.rate));
  // Positive velocity slides the window leftward across the buffer,
  // starting from the right end so a wide buffer never wraps.
  const int startx = spec_.bg_velocity > 0.0 ? bg_w - view_w_ : 0;

  Frame out(view_w_, view_h_);
  for (int y = 0; y < view_h_; ++y) {
    const double* src = background_.row(y);
    double* dst = out.row(y);
    for (int x = 0; x < view_w_; ++x) {
      int sx = x + startx - offset;
      if (pan_wraps_) {
        sx = ((sx % bg_w) + bg_w) % bg_w;
      } else {
        sx = std::clamp(sx, 0, bg_w - 1);
      }
      dst[x] = src[sx];
    }
  }

  if (!spec_.path.empty()) {
    const BlockPos b = block_at(t);
    const double lum = std::round(spec_.target_luminance);
    for (int y = b.tly; y < b.tly + spec_.target_h; ++y) {
      for (int x = b.tlx; x < b.tlx + spec_.target_w; ++x) {
        out.at(x, y) = lum;
      }
    }
  }
  return out;
}

}  // namespace stmd
