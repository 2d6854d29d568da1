#pragma once

#include <vector>

namespace stmd {

// Single-channel luminance image. x is the column index (increasing
// rightward), y is the row index (increasing downward), origin at the
// top-left pixel. Values are stored as doubles, nominally in [0, 255]
// for raw input frames and unbounded for intermediate signals.
class Frame {
 public:
  Frame() = default;
  Frame(int width, int height, double fill = 0.0);

  int width() const { return width_; }
  int height() const { return height_; }
  bool empty() const { return data_.empty(); }
  bool same_size(const Frame& other) const {
    return width_ == other.width_ && height_ == other.height_;
  }
  bool contains(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  double at(int x, int y) const { return data_[std::size_t(y) * width_ + x]; }
  double& at(int x, int y) { return data_[std::size_t(y) * width_ + x]; }
  const double* row(int y) const { return data_.data() + std::size_t(y) * width_; }
  double* row(int y) { return data_.data() + std::size_t(y) * width_; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  void fill(double value);
  double max_abs() const;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<double> data_;
};

// Bounded ring of past frames supporting causal temporal convolution.
// Lag 0 is the newest frame; frames older than the capacity are dropped.
class FrameHistory {
 public:
  explicit FrameHistory(int capacity);

  void push(Frame frame);
  void clear();

  int size() const { return size_; }
  int capacity() const { return capacity_; }
  bool empty() const { return size_ == 0; }

  // k in [0, size): 0 = newest.
  const Frame& at_lag(int k) const;

 private:
  std::vector<Frame> ring_;
  int capacity_ = 0;
  int head_ = -1;  // slot of the newest frame
  int size_ = 0;
};

}  // namespace stmd
