#include "pmis/selector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pmis/error.hpp"

namespace pmis {

double inverse_cdf_point(std::span<const double> cdf, double level) {
  if (cdf.empty()) throw ConfigError("empty cdf");
  const auto it = std::lower_bound(cdf.begin(), cdf.end(), level);
  if (it == cdf.end()) return static_cast<double>(cdf.size() - 1);
  const auto i = static_cast<std::size_t>(it - cdf.begin());
  const double below = i == 0 ? 0.0 : cdf[i - 1];
  const double step = cdf[i] - below;
  const double frac = step > 0.0 ? (level - below) / step : 1.0;
  return static_cast<double>(i) - 1.0 + frac;
}

Segmentation segment(std::span<const double> cdf, std::size_t n) {
  const std::size_t frames = cdf.size();
  if (n == 0) throw ConfigError("number of frames to select must be at least 1");
  if (n > frames) {
    throw ConfigError("cannot split " + std::to_string(frames) + " frames into " +
                      std::to_string(n) + " segments; use --allow-repeat or reduce N");
  }
  const auto last = static_cast<std::int64_t>(frames) - 1;
  Segmentation out;
  out.boundaries.assign(n + 1, -1);
  for (std::size_t k = 1; k < n; ++k) {
    const double x = inverse_cdf_point(cdf, static_cast<double>(k) / static_cast<double>(n));
    // Round half up; the epsilon keeps exact halves from flipping on round-off.
    auto b = static_cast<std::int64_t>(std::floor(x + 0.5 + 1e-9));
    b = std::max(b, out.boundaries[k - 1] + 1);
    b = std::min(b, last - static_cast<std::int64_t>(n - k));
    out.boundaries[k] = b;
  }
  out.boundaries[n] = last;
  out.segments.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.segments.push_back({static_cast<std::size_t>(out.boundaries[k] + 1),
                            static_cast<std::size_t>(out.boundaries[k + 1])});
  }
  return out;
}

std::string_view mode_name(SelectMode mode) {
  return mode == SelectMode::kRandom ? "random" : "center";
}

SelectMode parse_mode(std::string_view name) {
  if (name == "random") return SelectMode::kRandom;
  if (name == "center") return SelectMode::kCenter;
  throw ConfigError("unknown mode '" + std::string(name) + "' (expected random or center)");
}

std::size_t draw_in_segment(std::mt19937_64& rng, const Segment& segment) {
  const unsigned __int128 u = rng();
  const auto offset = static_cast<std::size_t>((u * segment.length()) >> 64);
  return segment.first + offset;
}

std::vector<std::size_t> select_indices(const Segmentation& segmentation, SelectMode mode,
                                        std::mt19937_64& rng) {
  std::vector<std::size_t> out;
  out.reserve(segmentation.segments.size());
  for (const auto& seg : segmentation.segments) {
    out.push_back(mode == SelectMode::kRandom ? draw_in_segment(rng, seg)
                                              : seg.first + (seg.length() - 1) / 2);
  }
  return out;
}

std::vector<std::size_t> select_indices(const Segmentation& segmentation, SelectMode mode,
                                        std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return select_indices(segmentation, mode, rng);
}

std::vector<std::size_t> pad_repeat(std::size_t frames, std::size_t n) {
  if (frames == 0) throw ConfigError("cannot pad an empty video");
  std::vector<std::size_t> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = k * frames / n;
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view video_id) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : video_id) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return seed ^ h;
}

void validate(const SelectConfig& config) {
  validate(config.scoring);
  if (config.num_frames == 0) throw ConfigError("number of frames to select must be at least 1");
  if (config.clips == 0) throw ConfigError("clips must be at least 1");
}

std::vector<ClipRange> clip_ranges(std::size_t frames, std::size_t clips) {
  if (clips == 0) throw ConfigError("clips must be at least 1");
  if (frames < clips) {
    throw ConfigError("cannot split " + std::to_string(frames) + " frames into " +
                      std::to_string(clips) + " clips");
  }
  std::vector<ClipRange> out(clips);
  for (std::size_t k = 0; k < clips; ++k) {
    const std::size_t first = k * frames / clips;
    out[k] = {first, (k + 1) * frames / clips - first};
  }
  return out;
}

SelectionReport select_video(const FrameSequence& seq, const SelectConfig& config) {
  validate(config);
  if (seq.empty()) throw IngestError("video has no frames");
  SelectionReport report;
  report.config = config;
  std::mt19937_64 rng(config.seed);
  for (const auto& range : clip_ranges(seq.size(), config.clips)) {
    ClipSelection clip;
    clip.range = range;
    const auto frames = seq.slice(range.first, range.first + range.count);
    if (range.count >= 2) clip.scores = score_video(frames, config.scoring);

    std::vector<std::size_t> local;
    if (range.count < config.num_frames) {
      if (!config.allow_repeat) {
        throw ConfigError("requested " + std::to_string(config.num_frames) + " frames but " +
                          (config.clips > 1 ? "a clip" : "the video") + " has " +
                          std::to_string(range.count) + "; use --allow-repeat or reduce N");
      }
      local = pad_repeat(range.count, config.num_frames);
      clip.padded = true;
    } else {
      const std::vector<double> single{1.0};
      clip.segmentation = segment(clip.scores ? std::span<const double>(clip.scores->cdf)
                                              : std::span<const double>(single),
                                  config.num_frames);
      local = select_indices(*clip.segmentation, config.mode, rng);
    }
    for (auto& i : local) i += range.first;
    clip.indices = local;
    report.indices.insert(report.indices.end(), local.begin(), local.end());
    report.clips.push_back(std::move(clip));
  }
  return report;
}

SelectionReport dense_clip_select(const FrameSequence& seq, std::size_t clips,
                                  std::size_t per_clip, SelectConfig config) {
  config.clips = clips;
  config.num_frames = per_clip;
  return select_video(seq, config);
}

}  // namespace pmis
