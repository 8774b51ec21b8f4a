#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string_view>
#include <vector>

#include "pmis/image.hpp"
#include "pmis/score_pipeline.hpp"

namespace pmis {

// Inclusive frame index range.
struct Segment {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t length() const { return last - first + 1; }
  friend bool operator==(const Segment&, const Segment&) = default;
};

/// N segments partitioning {0..T-1}. boundaries[0] = -1, boundaries[N] = T-1,
/// and segment k covers (boundaries[k], boundaries[k+1]].
struct Segmentation {
  std::vector<std::int64_t> boundaries;
  std::vector<Segment> segments;
};

// Real-valued frame position where the cdf crosses `level`, interpolating
// linearly between the bracketing frames (frame -1 has cdf 0).
double inverse_cdf_point(std::span<const double> cdf, double level);

// Boundaries at levels k/N rounded half up, then forced strictly increasing
// and clamped so every segment is nonempty. Throws ConfigError if N == 0 or
// N > T.
Segmentation segment(std::span<const double> cdf, std::size_t n);

enum class SelectMode { kRandom, kCenter };

std::string_view mode_name(SelectMode mode);
SelectMode parse_mode(std::string_view name);

// Generator for random selection: std::mt19937_64 seeded with the 64-bit
// seed. Each segment consumes exactly one 64-bit output u, mapped to
// first + floor(u * length / 2^64).
std::size_t draw_in_segment(std::mt19937_64& rng, const Segment& segment);

// One index per segment, in segment order. Center mode takes the lower median.
std::vector<std::size_t> select_indices(const Segmentation& segmentation, SelectMode mode,
                                        std::mt19937_64& rng);
std::vector<std::size_t> select_indices(const Segmentation& segmentation, SelectMode mode,
                                        std::uint64_t seed);

// n indices floor(k * frames / n), k = 0..n-1: every frame index appears
// n / frames or n / frames + 1 times.
std::vector<std::size_t> pad_repeat(std::size_t frames, std::size_t n);

// seed XOR FNV-1a 64 of the identifier, for per-video seeds in batch jobs.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view video_id);

struct SelectConfig {
  ScoreConfig scoring;
  std::size_t num_frames = 0;
  SelectMode mode = SelectMode::kCenter;
  std::uint64_t seed = 0;
  std::size_t clips = 1;
  bool allow_repeat = false;
};

void validate(const SelectConfig& config);

struct ClipRange {
  std::size_t first = 0;
  std::size_t count = 0;
  friend bool operator==(const ClipRange&, const ClipRange&) = default;
};

// K contiguous clips; clip k covers [floor(k T / K), floor((k + 1) T / K)).
std::vector<ClipRange> clip_ranges(std::size_t frames, std::size_t clips);

struct ClipSelection {
  ClipRange range;
  std::optional<ScoreSeries> scores;          // absent for single-frame clips
  std::optional<Segmentation> segmentation;   // absent when repeat padding was used
  std::vector<std::size_t> indices;           // global frame indices
  bool padded = false;
};

struct SelectionReport {
  std::vector<std::size_t> indices;
  SelectConfig config;
  std::vector<ClipSelection> clips;
};

// Scores, segments and selects. With config.clips > 1 this is the dense
// clip mode: each clip is handled independently and the per-clip indices
// are concatenated. Random draws share one generator across clips.
SelectionReport select_video(const FrameSequence& seq, const SelectConfig& config);

SelectionReport dense_clip_select(const FrameSequence& seq, std::size_t clips,
                                  std::size_t per_clip, SelectConfig config);

}  // namespace pmis
