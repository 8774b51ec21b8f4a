#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "pmis/image.hpp"
#include "pmis/score_pipeline.hpp"
#include "pmis/selector.hpp"

namespace pmis {

// In-process entry points over a caller-owned T x H x W x C array, for
// language bindings and data loaders.

enum class PixelType { kU8, kF64 };

struct FrameBufferView {
  const void* data = nullptr;
  PixelType type = PixelType::kU8;
  std::vector<std::size_t> shape;        // {T, H, W, C}
  std::vector<std::ptrdiff_t> strides;   // bytes; empty means C-contiguous
};

// Copies the buffer into a FrameSequence. u8 values are divided by 255,
// f64 values must already lie in [0, 1]. Throws IngestError unless the view
// is 4-D, C-contiguous, with C in {1, 3}.
FrameSequence frames_from_buffer(const FrameBufferView& view);

ScoreSeries score_frames(const FrameBufferView& view, const ScoreConfig& config);
SelectionReport select_frames(const FrameBufferView& view, const SelectConfig& config);

std::string_view version();

}  // namespace pmis
