#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pmis {

/// A single frame: height x width x channels real intensities, row-major with
/// channels interleaved (index = (y * width + x) * channels + c).
class Image {
 public:
  Image() = default;
  Image(std::size_t height, std::size_t width, std::size_t channels, double fill = 0.0);
  Image(std::size_t height, std::size_t width, std::size_t channels, std::vector<double> values);

  std::size_t height() const { return height_; }
  std::size_t width() const { return width_; }
  std::size_t channels() const { return channels_; }
  std::size_t size() const { return values_.size(); }

  double at(std::size_t y, std::size_t x, std::size_t c = 0) const {
    return values_[(y * width_ + x) * channels_ + c];
  }
  double& at(std::size_t y, std::size_t x, std::size_t c = 0) {
    return values_[(y * width_ + x) * channels_ + c];
  }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool same_shape(const Image& other) const {
    return height_ == other.height_ && width_ == other.width_ && channels_ == other.channels_;
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t height_ = 0;
  std::size_t width_ = 0;
  std::size_t channels_ = 0;
  std::vector<double> values_;
};

/// Decoded video: T frames sharing one shape.
class FrameSequence {
 public:
  FrameSequence() = default;
  explicit FrameSequence(std::vector<Image> frames);

  // Throws IngestError when the frame's shape differs from the ones already held.
  void push_back(Image frame);

  std::size_t size() const { return frames_.size(); }
  bool empty() const { return frames_.empty(); }
  std::size_t height() const { return frames_.empty() ? 0 : frames_.front().height(); }
  std::size_t width() const { return frames_.empty() ? 0 : frames_.front().width(); }
  std::size_t channels() const { return frames_.empty() ? 0 : frames_.front().channels(); }

  const Image& operator[](std::size_t t) const { return frames_[t]; }
  Image& operator[](std::size_t t) { return frames_[t]; }
  auto begin() const { return frames_.begin(); }
  auto end() const { return frames_.end(); }
  const std::vector<Image>& frames() const { return frames_; }

  // Frames [first, last) as a new sequence.
  FrameSequence slice(std::size_t first, std::size_t last) const;

  friend bool operator==(const FrameSequence&, const FrameSequence&) = default;

 private:
  std::vector<Image> frames_;
};

}  // namespace pmis
