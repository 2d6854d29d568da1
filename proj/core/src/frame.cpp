#include "stmd/frame.hpp"

#include <algorithm>
#include <cmath>

#include "stmd/errors.hpp"

namespace stmd {

Frame::Frame(int width, int height, double fill)
    : width_(width), height_(height) {
  if (width <= 0 || height <= 0) {
    throw InvalidParameter("frame dimensions must be positive");
  }
  data_.assign(std::size_t(width) * height, fill);
}

void Frame::fill(double value) {
  std::fill(data_.begin(), data_.end(), value);
}

double Frame::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::fabs(v));
  return m;
}

FrameHistory::FrameHistory(int capacity) : capacity_(capacity) {
  if (capacity <= 0) {
    throw InvalidParameter("history capacity must be positive");
  }
  ring_.resize(capacity);
}

void FrameHistory::push(Frame frame) {
  head_ = (head_ + 1) % capacity_;
  ring_[head_] = std::move(frame);
  size_ = std::min(size_ + 1, capacity_);
}

void FrameHistory::clear() {
  head_ = -1;
  size_ = 0;
}

const Frame& FrameHistory::at_lag(int k) const {
  if (k < 0 || k >= size_) {
    throw InvalidState("history lag out of range");
  }
  return ring_[(head_ - k + capacity_) % capacity_];
}

}  // namespace stmd
