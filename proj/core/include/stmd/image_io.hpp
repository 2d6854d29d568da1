#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "stmd/frame.hpp"
#include "stmd/synth.hpp"

namespace stmd {

// Rec. 601 luma from 8-bit RGB.
inline double rec601_luma(double r, double g, double b) {
  return 0.299 * r + 0.587 * g + 0.114 * b;
}

// Binary 8-bit PGM (P5).
Frame read_pgm(const std::string& path);
void write_pgm(const Frame& frame, const std::string& path);

// 8-bit PNG: grayscale read as-is, color converted with Rec. 601,
// 16-bit depth reduced to 8. Written frames are grayscale.
Frame read_png(const std::string& path);
void write_png(const Frame& frame, const std::string& path);

// Dispatch on the file extension (.pgm / .png).
Frame read_image(const std::string& path);

// Sequential frame stream with constant dimensions.
class FrameSource {
 public:
  virtual ~FrameSource() = default;
  virtual std::optional<Frame> next() = 0;
  virtual int frame_count() const = 0;
  virtual void reset() = 0;
};

// Frames from a directory of .pgm/.png files in lexicographic name order,
// or from a manifest file listing one image path per line (relative paths
// resolve against the manifest's directory). A dimension change mid-stream
// raises IoError naming the offending file.
class FileFrameSource : public FrameSource {
 public:
  explicit FileFrameSource(const std::string& source);
  std::optional<Frame> next() override;
  int frame_count() const override { return int(paths_.size()); }
  void reset() override { index_ = 0; }

 private:
  std::vector<std::string> paths_;
  std::size_t index_ = 0;
  int w_ = -1, h_ = -1;
};

class SyntheticFrameSource : public FrameSource {
 public:
  explicit SyntheticFrameSource(SequenceSpec spec) : seq_(spec) {}
  explicit SyntheticFrameSource(const SyntheticSequence& seq) : seq_(seq) {}
  std::optional<Frame> next() override {
    if (t_ >= seq_.frame_count()) return std::nullopt;
    return seq_.frame(t_++);
  }
  int frame_count() const override { return seq_.frame_count(); }
  void reset() override { t_ = 0; }
  const SyntheticSequence& sequence() const { return seq_; }

 private:
  SyntheticSequence seq_;
  int t_ = 0;
};

// Directory or manifest path -> FileFrameSource.
std::unique_ptr<FrameSource> open_frames(const std::string& source);

}  // namespace stmd
