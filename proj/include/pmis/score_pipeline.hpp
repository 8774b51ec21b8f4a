#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pmis/image.hpp"
#include "pmis/metrics.hpp"

namespace pmis {

inline constexpr std::size_t kDefaultPatchSize = 7;
inline constexpr double kDefaultAlpha = 0.3;

struct ScoreConfig {
  MetricKind metric = MetricKind::kPmi;
  std::size_t patch_size = kDefaultPatchSize;
  double alpha = kDefaultAlpha;
  std::size_t histogram_bins = kDefaultHistogramBins;
  // Treat frame 0 as carrying no motion instead of the M_0 = 0 convention.
  bool exclude_t0_mass = false;
  // Worker pool size for pairwise scoring; 0 = resolve_threads default.
  std::size_t threads = 0;
};

// Throws ConfigError describing the first invalid field.
void validate(const ScoreConfig& config);

/// Per-frame raw similarity plus the derived motion distribution.
struct ScoreSeries {
  std::vector<double> raw;         // raw[0] = 0, raw[t] = metric(frame t-1, frame t)
  std::vector<double> normalized;  // inverted (similarity metrics) and L1-normalized
  std::vector<double> remapped;    // shifted leaky ReLU, L1-renormalized
  std::vector<double> cdf;         // prefix sums of remapped, cdf.back() == 1
  std::vector<std::size_t> degenerate;  // t whose raw value was substituted
  double mean = 0.0;               // mean of `normalized`
  double alpha = kDefaultAlpha;
};

struct PairTiming {
  double total_ms = 0.0;
  double mean_ms = 0.0;
  std::size_t pairs = 0;
};

// Raw pairwise values before any substitution; entry 0 is the M_0 = 0
// convention. Pairs whose metric throws DegenerateInputError, or returns a
// non-finite value, are listed in `degenerate` and left as NaN.
struct RawScores {
  std::vector<double> values;
  std::vector<std::size_t> degenerate;
  PairTiming timing;
};

RawScores raw_scores(const FrameSequence& seq, const ScoreConfig& config);

// Sequential, single-threaded pass over the pairs timed with a monotonic
// clock after one untimed warm-up evaluation of the first pair.
RawScores timed_raw_scores(const FrameSequence& seq, const ScoreConfig& config);

// max(raw) - raw, then divided by the sum. All-equal input yields 1/T.
std::vector<double> invert_normalize(std::span<const double> raw);

// raw / sum(raw); an all-zero input yields 1/T.
std::vector<double> l1_normalize(std::span<const double> raw);

// The piecewise map through (0, 0), (mu, alpha * mu) and (1, 1).
double shifted_leaky_relu(double x, double mu, double alpha);

// Elementwise map with mu = mean(normalized), then L1-renormalized.
std::vector<double> shifted_leaky_relu(std::span<const double> normalized, double alpha);

// Prefix sums with the final entry pinned to 1. Throws NumericalError if
// the sum drifts from 1 by more than 1e-9.
std::vector<double> cumulate(std::span<const double> remapped);

// Substitutes degenerate pairs, orients by metric direction, normalizes,
// remaps and accumulates.
ScoreSeries finish_scores(const RawScores& raw, const ScoreConfig& config);

ScoreSeries score_video(const FrameSequence& seq, const ScoreConfig& config);

}  // namespace pmis

namespace pmis {

struct MetricComparison {
  MetricKind metric = MetricKind::kPmi;
  ScoreSeries scores;
  PairTiming timing;
};

// Scores the video once per metric using timed_raw_scores.
std::vector<MetricComparison> compare_metrics(const FrameSequence& seq,
                                              const std::vector<MetricKind>& metrics,
                                              const ScoreConfig& base);

}  // namespace pmis
