#include "pmis/frame_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>
#include <opencv2/imgproc.hpp>

#include "pmis/error.hpp"

namespace fs = std::filesystem;

namespace pmis {
namespace {

constexpr std::array<std::uint8_t, 4> kMagic = {0x50, 0x4D, 0x49, 0x53};  // "PMIS"
constexpr std::array<double, 3> kLuma = {0.299, 0.587, 0.114};

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool is_frame_file(const fs::path& p) {
  static const std::array<std::string_view, 6> kExt = {".png", ".jpg", ".jpeg",
                                                       ".ppm", ".pgm", ".pnm"};
  const auto ext = lower(p.extension().string());
  return std::find(kExt.begin(), kExt.end(), ext) != kExt.end();
}

template <typename T>
void put_le(std::vector<std::uint8_t>& out, T value) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<std::uint8_t>((static_cast<std::uint64_t>(value) >> (8 * i)) & 0xFF));
  }
}

template <typename T>
T get_le(std::span<const std::uint8_t> bytes, std::size_t offset) {
  std::uint64_t v = 0;
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    v |= static_cast<std::uint64_t>(bytes[offset + i]) << (8 * i);
  }
  return static_cast<T>(v);
}

}  // namespace

bool numeric_aware_less(std::string_view a, std::string_view b) {
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() && j < b.size()) {
    if (is_digit(a[i]) && is_digit(b[j])) {
      std::size_t ei = i;
      std::size_t ej = j;
      while (ei < a.size() && is_digit(a[ei])) ++ei;
      while (ej < b.size() && is_digit(b[ej])) ++ej;
      // strip leading zeros, then longer run = larger value
      std::size_t zi = i;
      std::size_t zj = j;
      while (zi + 1 < ei && a[zi] == '0') ++zi;
      while (zj + 1 < ej && b[zj] == '0') ++zj;
      const auto da = a.substr(zi, ei - zi);
      const auto db = b.substr(zj, ej - zj);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      // same value: fewer leading zeros first
      if (ei - i != ej - j) return (ei - i) < (ej - j);
      i = ei;
      j = ej;
      continue;
    }
    if (a[i] != b[j]) {
      return static_cast<unsigned char>(a[i]) < static_cast<unsigned char>(b[j]);
    }
    ++i;
    ++j;
  }
  return (a.size() - i) < (b.size() - j);
}

std::vector<fs::path> list_frame_files(const fs::path& dir, FileOrder order) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) {
    throw IngestError("not a directory: " + dir.string());
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && is_frame_file(entry.path())) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [order](const fs::path& x, const fs::path& y) {
    const auto nx = x.filename().string();
    const auto ny = y.filename().string();
    return order == FileOrder::kNumericAware ? numeric_aware_less(nx, ny) : nx < ny;
  });
  return files;
}

Image read_image(const fs::path& file) {
  cv::Mat mat = cv::imread(file.string(), cv::IMREAD_UNCHANGED);
  if (mat.empty()) {
    throw IngestError("cannot decode image: " + file.string());
  }
  double range = 0.0;
  switch (mat.depth()) {
    case CV_8U: range = 255.0; break;
    case CV_16U: range = 65535.0; break;
    default: throw IngestError("unsupported pixel depth in " + file.string());
  }
  switch (mat.channels()) {
    case 1: break;
    case 2: cv::extractChannel(mat, mat, 0); break;
    case 3: cv::cvtColor(mat, mat, cv::COLOR_BGR2RGB); break;
    case 4: cv::cvtColor(mat, mat, cv::COLOR_BGRA2RGB); break;
    default: throw IngestError("unsupported channel count in " + file.string());
  }
  // Divide rather than multiply by 1/range so values match the container path bit for bit.
  cv::Mat wide;
  mat.convertTo(wide, CV_64F);
  const auto h = static_cast<std::size_t>(wide.rows);
  const auto w = static_cast<std::size_t>(wide.cols);
  const auto c = static_cast<std::size_t>(wide.channels());
  Image image(h, w, c);
  auto out = image.values().begin();
  for (std::size_t y = 0; y < h; ++y) {
    const auto* row = wide.ptr<double>(static_cast<int>(y));
    for (std::size_t i = 0; i < w * c; ++i) *out++ = row[i] / range;
  }
  return image;
}

void write_image(const Image& image, const fs::path& file) {
  const int type = image.channels() == 1 ? CV_8UC1 : CV_8UC3;
  if (image.channels() != 1 && image.channels() != 3) {
    throw ConfigError("can only write 1- or 3-channel images");
  }
  cv::Mat mat(static_cast<int>(image.height()), static_cast<int>(image.width()), type);
  const auto vals = image.values();
  for (std::size_t y = 0; y < image.height(); ++y) {
    auto* row = mat.ptr<std::uint8_t>(static_cast<int>(y));
    for (std::size_t i = 0; i < image.width() * image.channels(); ++i) {
      row[i] = quantize_u8(vals[y * image.width() * image.channels() + i]);
    }
  }
  if (image.channels() == 3) cv::cvtColor(mat, mat, cv::COLOR_RGB2BGR);
  bool ok = false;
  try {
    ok = cv::imwrite(file.string(), mat);
  } catch (const cv::Exception& e) {
    throw IngestError("cannot write image " + file.string() + ": " + e.what());
  }
  if (!ok) throw IngestError("cannot write image " + file.string());
}

FrameSequence load_directory(const fs::path& dir, const IngestOptions& options) {
  const auto files = list_frame_files(dir, options.order);
  if (files.empty()) {
    throw IngestError("no image files in " + dir.string());
  }
  if (files.size() < 2) {
    throw IngestError("need at least 2 frames, found 1 in " + dir.string());
  }
  FrameSequence seq;
  for (const auto& f : files) seq.push_back(read_image(f));
  return preprocess(seq, options);
}

std::uint8_t quantize_u8(double value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ConfigError("intensity " + std::to_string(value) + " outside [0, 1]");
  }
  return static_cast<std::uint8_t>(std::floor(value * 255.0 + 0.5));
}

std::vector<std::uint8_t> encode_container(const FrameSequence& seq) {
  if (seq.channels() != 1 && seq.channels() != 3) {
    throw ConfigError("container frames need 1 or 3 channels");
  }
  const std::size_t frame_bytes = seq.height() * seq.width() * seq.channels();
  std::vector<std::uint8_t> out;
  out.reserve(kContainerHeaderSize + seq.size() * frame_bytes);
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  put_le<std::uint16_t>(out, kContainerVersion);
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(seq.height()));
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(seq.width()));
  put_le<std::uint8_t>(out, static_cast<std::uint8_t>(seq.channels()));
  put_le<std::uint8_t>(out, 0);   // dtype u8
  put_le<std::uint16_t>(out, 0);  // reserved
  put_le<std::uint32_t>(out, static_cast<std::uint32_t>(seq.size()));
  for (const auto& frame : seq) {
    for (double v : frame.values()) out.push_back(quantize_u8(v));
  }
  return out;
}

FrameSequence decode_container(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin())) {
    throw IngestError("not a PMIS container (bad magic)");
  }
  if (bytes.size() < kContainerHeaderSize) {
    throw IngestError("truncated PMIS header");
  }
  const auto version = get_le<std::uint16_t>(bytes, 4);
  const auto height = get_le<std::uint32_t>(bytes, 6);
  const auto width = get_le<std::uint32_t>(bytes, 10);
  const auto channels = get_le<std::uint8_t>(bytes, 14);
  const auto dtype = get_le<std::uint8_t>(bytes, 15);
  const auto frames = get_le<std::uint32_t>(bytes, 18);
  if (version != kContainerVersion) {
    throw IngestError("unsupported PMIS version " + std::to_string(version));
  }
  if (dtype != 0) {
    throw IngestError("unsupported PMIS dtype " + std::to_string(dtype));
  }
  if (channels != 1 && channels != 3) {
    throw IngestError("unsupported PMIS channel count " + std::to_string(channels));
  }
  if (height == 0 || width == 0) {
    throw IngestError("PMIS container declares an empty frame size");
  }
  const std::size_t frame_bytes = std::size_t{height} * width * channels;
  const std::size_t expected = frame_bytes * frames;
  const std::size_t present = bytes.size() - kContainerHeaderSize;
  if (present < expected) {
    throw IngestError("truncated PMIS payload: " + std::to_string(frames) + " frames need " +
                      std::to_string(expected) + " bytes, found " + std::to_string(present));
  }
  if (present > expected) {
    throw IngestError("PMIS payload has " + std::to_string(present - expected) +
                      " trailing bytes");
  }
  FrameSequence seq;
  for (std::size_t t = 0; t < frames; ++t) {
    std::vector<double> values(frame_bytes);
    const auto* src = bytes.data() + kContainerHeaderSize + t * frame_bytes;
    for (std::size_t i = 0; i < frame_bytes; ++i) values[i] = src[i] / 255.0;
    seq.push_back(Image(height, width, channels, std::move(values)));
  }
  return seq;
}

FrameSequence load_container(const fs::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IngestError("cannot open " + file.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return decode_container(bytes);
}

void write_container(const FrameSequence& seq, const fs::path& file) {
  const auto bytes = encode_container(seq);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IngestError("cannot write " + file.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IngestError("write failed: " + file.string());
}

FrameSequence load_frames(const fs::path& path, const IngestOptions& options) {
  std::error_code ec;
  if (fs::is_directory(path, ec)) return load_directory(path, options);
  if (!fs::exists(path, ec)) throw IngestError("no such file or directory: " + path.string());
  return preprocess(load_container(path), options);
}

Image to_grayscale(const Image& image) {
  if (image.channels() == 1) return image;
  if (image.channels() != 3) throw ConfigError("grayscale conversion needs 1 or 3 channels");
  Image out(image.height(), image.width(), 1);
  for (std::size_t y = 0; y < image.height(); ++y) {
    for (std::size_t x = 0; x < image.width(); ++x) {
      out.at(y, x) = kLuma[0] * image.at(y, x, 0) + kLuma[1] * image.at(y, x, 1) +
                     kLuma[2] * image.at(y, x, 2);
    }
  }
  return out;
}

Image resize_bilinear(const Image& image, std::size_t height, std::size_t width) {
  if (height == 0 || width == 0) throw ConfigError("resize target must be positive");
  if (height == image.height() && width == image.width()) return image;

  // Center-aligned grid: output pixel centers map to (o + 0.5) * scale - 0.5.
  struct Tap {
    std::size_t lo, hi;
    double w;
  };
  auto taps = [](std::size_t out_n, std::size_t in_n) {
    std::vector<Tap> t(out_n);
    const double scale = static_cast<double>(in_n) / static_cast<double>(out_n);
    for (std::size_t o = 0; o < out_n; ++o) {
      double s = (static_cast<double>(o) + 0.5) * scale - 0.5;
      s = std::clamp(s, 0.0, static_cast<double>(in_n - 1));
      const auto lo = static_cast<std::size_t>(std::floor(s));
      t[o] = {lo, std::min(lo + 1, in_n - 1), s - static_cast<double>(lo)};
    }
    return t;
  };
  const auto ty = taps(height, image.height());
  const auto tx = taps(width, image.width());
  const std::size_t c_n = image.channels();
  Image out(height, width, c_n);
  for (std::size_t y = 0; y < height; ++y) {
    for (std::size_t x = 0; x < width; ++x) {
      for (std::size_t c = 0; c < c_n; ++c) {
        const double top = (1.0 - tx[x].w) * image.at(ty[y].lo, tx[x].lo, c) +
                           tx[x].w * image.at(ty[y].lo, tx[x].hi, c);
        const double bottom = (1.0 - tx[x].w) * image.at(ty[y].hi, tx[x].lo, c) +
                              tx[x].w * image.at(ty[y].hi, tx[x].hi, c);
        out.at(y, x, c) = (1.0 - ty[y].w) * top + ty[y].w * bottom;
      }
    }
  }
  return out;
}

FrameSequence preprocess(const FrameSequence& seq, const IngestOptions& options) {
  if (options.resize_to && (options.resize_to->height == 0 || options.resize_to->width == 0)) {
    throw ConfigError("resize target must be positive");
  }
  if (!options.grayscale && !options.resize_to) return seq;
  FrameSequence out;
  for (const auto& frame : seq) {
    Image f = options.grayscale ? to_grayscale(frame) : frame;
    if (options.resize_to) f = resize_bilinear(f, options.resize_to->height, options.resize_to->width);
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace pmis
