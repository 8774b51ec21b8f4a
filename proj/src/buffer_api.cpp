#include "pmis/buffer_api.hpp"

#include <cstdint>
#include <cstring>
#include <string>

#include "pmis/error.hpp"

namespace pmis {

FrameSequence frames_from_buffer(const FrameBufferView& view) {
  if (view.data == nullptr) throw IngestError("frame buffer is null");
  if (view.shape.size() != 4) {
    throw IngestError("frame buffer must be 4-D (T, H, W, C), got " +
                      std::to_string(view.shape.size()) + " dimensions");
  }
  const std::size_t frames = view.shape[0];
  const std::size_t h = view.shape[1];
  const std::size_t w = view.shape[2];
  const std::size_t c = view.shape[3];
  if (c != 1 && c != 3) throw IngestError("channel axis must have size 1 or 3");
  if (frames == 0 || h == 0 || w == 0) throw IngestError("frame buffer is empty");

  const std::size_t item = view.type == PixelType::kU8 ? 1 : sizeof(double);
  if (!view.strides.empty()) {
    if (view.strides.size() != 4) throw IngestError("strides must have 4 entries");
    std::ptrdiff_t expected = static_cast<std::ptrdiff_t>(item);
    for (int axis = 3; axis >= 0; --axis) {
      const auto a = static_cast<std::size_t>(axis);
      if (view.shape[a] > 1 && view.strides[a] != expected) {
        throw IngestError("frame buffer is not C-contiguous");
      }
      expected *= static_cast<std::ptrdiff_t>(view.shape[a]);
    }
  }

  const std::size_t per_frame = h * w * c;
  FrameSequence seq;
  for (std::size_t t = 0; t < frames; ++t) {
    std::vector<double> values(per_frame);
    if (view.type == PixelType::kU8) {
      const auto* src = static_cast<const std::uint8_t*>(view.data) + t * per_frame;
      for (std::size_t i = 0; i < per_frame; ++i) values[i] = src[i] / 255.0;
    } else {
      const auto* src = static_cast<const double*>(view.data) + t * per_frame;
      for (std::size_t i = 0; i < per_frame; ++i) {
        if (!(src[i] >= 0.0 && src[i] <= 1.0)) {
          throw IngestError("real-valued frames must lie in [0, 1]");
        }
        values[i] = src[i];
      }
    }
    seq.push_back(Image(h, w, c, std::move(values)));
  }
  return seq;
}

ScoreSeries score_frames(const FrameBufferView& view, const ScoreConfig& config) {
  return score_video(frames_from_buffer(view), config);
}

SelectionReport select_frames(const FrameBufferView& view, const SelectConfig& config) {
  return select_video(frames_from_buffer(view), config);
}

std::string_view version() { return PMIS_VERSION; }

}  // namespace pmis
