#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "pmis/image.hpp"

namespace pmis {

enum class FileOrder { kNumericAware, kLexicographic };

struct ResizeTarget {
  std::size_t height = 0;
  std::size_t width = 0;
};

struct IngestOptions {
  std::optional<ResizeTarget> resize_to;
  bool grayscale = false;
  FileOrder order = FileOrder::kNumericAware;
};

// "f_2" < "f_10": digit runs compare by value, everything else bytewise.
bool numeric_aware_less(std::string_view a, std::string_view b);

// Image files (png, jpg, jpeg, ppm, pgm, pnm) in `dir`, sorted by `order`.
std::vector<std::filesystem::path> list_frame_files(const std::filesystem::path& dir,
                                                    FileOrder order = FileOrder::kNumericAware);

// Decodes one image file. 8-bit data is divided by 255, 16-bit by 65535.
// Colour images come back RGB; an alpha channel is dropped.
Image read_image(const std::filesystem::path& file);

// Writes an Image as 8-bit PNG (or any format OpenCV infers from the extension).
void write_image(const Image& image, const std::filesystem::path& file);

FrameSequence load_directory(const std::filesystem::path& dir, const IngestOptions& options = {});

// PMIS container: little-endian header followed by T raw u8 frames.
inline constexpr std::size_t kContainerHeaderSize = 22;
inline constexpr std::uint16_t kContainerVersion = 1;

std::vector<std::uint8_t> encode_container(const FrameSequence& seq);
FrameSequence decode_container(std::span<const std::uint8_t> bytes);
FrameSequence load_container(const std::filesystem::path& file);
void write_container(const FrameSequence& seq, const std::filesystem::path& file);

// Loads a directory of images or a PMIS container, then applies `options`.
FrameSequence load_frames(const std::filesystem::path& path, const IngestOptions& options = {});

// Round half up onto the u8 grid. Throws ConfigError outside [0, 1].
std::uint8_t quantize_u8(double value);

Image to_grayscale(const Image& image);
Image resize_bilinear(const Image& image, std::size_t height, std::size_t width);
FrameSequence preprocess(const FrameSequence& seq, const IngestOptions& options);

}  // namespace pmis
