#include "pmis/image.hpp"

#include <string>

#include "pmis/error.hpp"

namespace pmis {

Image::Image(std::size_t height, std::size_t width, std::size_t channels, double fill)
    : height_(height), width_(width), channels_(channels),
      values_(height * width * channels, fill) {}

Image::Image(std::size_t height, std::size_t width, std::size_t channels,
             std::vector<double> values)
    : height_(height), width_(width), channels_(channels), values_(std::move(values)) {
  if (values_.size() != height * width * channels) {
    throw IngestError("image buffer holds " + std::to_string(values_.size()) +
                      " values, expected " + std::to_string(height * width * channels));
  }
}

FrameSequence::FrameSequence(std::vector<Image> frames) {
  frames_.reserve(frames.size());
  for (auto& frame : frames) push_back(std::move(frame));
}

void FrameSequence::push_back(Image frame) {
  if (!frames_.empty() && !frames_.front().same_shape(frame)) {
    const auto& f = frames_.front();
    throw IngestError("frame " + std::to_string(frames_.size()) + " is " +
                      std::to_string(frame.height()) + "x" + std::to_string(frame.width()) +
                      "x" + std::to_string(frame.channels()) + " but earlier frames are " +
                      std::to_string(f.height()) + "x" + std::to_string(f.width()) + "x" +
                      std::to_string(f.channels()));
  }
  frames_.push_back(std::move(frame));
}

FrameSequence FrameSequence::slice(std::size_t first, std::size_t last) const {
  FrameSequence out;
  out.frames_.assign(frames_.begin() + static_cast<std::ptrdiff_t>(first),
                     frames_.begin() + static_cast<std::ptrdiff_t>(last));
  return out;
}

}  // namespace pmis
