#include "pmis/score_pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>
#include <string>

#include "pmis/entropy.hpp"
#include "pmis/error.hpp"
#include "pmis/parallel.hpp"
#include "pmis/patch_embed.hpp"

namespace pmis {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

// Everything needed to evaluate one adjacent pair.
struct PairScorer {
  MetricKind metric;
  std::size_t bins;
  std::optional<PatchGrid> grid;

  PairScorer(const FrameSequence& seq, const ScoreConfig& config)
      : metric(config.metric), bins(config.histogram_bins) {
    if (seq.size() < 2) {
      throw IngestError("need at least 2 frames to score, got " + std::to_string(seq.size()));
    }
    if (metric == MetricKind::kPmi) {
      grid = make_grid(seq.height(), seq.width(), seq.channels(), config.patch_size);
    }
  }

  double operator()(const Image& prev, const Image& curr) const {
    switch (metric) {
      case MetricKind::kPmi: return pmi(prev, curr, *grid).value;
      case MetricKind::kEuclidean: return euclidean(prev, curr);
      case MetricKind::kCosine: return cosine(prev, curr);
      case MetricKind::kPsnr: return psnr(prev, curr);
      case MetricKind::kHistogramMi: return histogram_mi(prev, curr, bins);
    }
    return 0.0;
  }

  // NaN marks an undefined pair.
  double guarded(const Image& prev, const Image& curr) const {
    try {
      const double v = (*this)(prev, curr);
      return std::isfinite(v) ? v : std::numeric_limits<double>::quiet_NaN();
    } catch (const DegenerateInputError&) {
      return std::numeric_limits<double>::quiet_NaN();
    }
  }
};

std::vector<std::size_t> nan_positions(const std::vector<double>& values) {
  std::vector<std::size_t> out;
  for (std::size_t t = 0; t < values.size(); ++t) {
    if (std::isnan(values[t])) out.push_back(t);
  }
  return out;
}

std::vector<double> uniform(std::size_t n) {
  return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

void require_finite(std::span<const double> values, const char* what) {
  if (values.empty()) throw ConfigError(std::string(what) + ": empty score vector");
  for (double v : values) {
    if (!std::isfinite(v)) throw NumericalError(std::string(what) + ": non-finite score");
  }
}

}  // namespace

void validate(const ScoreConfig& config) {
  if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) {
    throw ConfigError("alpha must be in [0, 1], got " + std::to_string(config.alpha));
  }
  if (config.patch_size == 0) throw ConfigError("patch size must be at least 1");
  if (config.histogram_bins < 2) throw ConfigError("histogram bins must be at least 2");
}

RawScores raw_scores(const FrameSequence& seq, const ScoreConfig& config) {
  validate(config);
  const PairScorer scorer(seq, config);
  RawScores out;
  out.values.assign(seq.size(), 0.0);
  const auto start = Clock::now();
  parallel_for(seq.size() - 1, resolve_threads(config.threads), [&](std::size_t i) {
    out.values[i + 1] = scorer.guarded(seq[i], seq[i + 1]);
  });
  out.timing.pairs = seq.size() - 1;
  out.timing.total_ms = elapsed_ms(start);
  out.timing.mean_ms = out.timing.total_ms / static_cast<double>(out.timing.pairs);
  out.degenerate = nan_positions(out.values);
  return out;
}

RawScores timed_raw_scores(const FrameSequence& seq, const ScoreConfig& config) {
  validate(config);
  const PairScorer scorer(seq, config);
  RawScores out;
  out.values.assign(seq.size(), 0.0);
  (void)scorer.guarded(seq[0], seq[1]);  // warm-up
  for (std::size_t t = 1; t < seq.size(); ++t) {
    const auto start = Clock::now();
    out.values[t] = scorer.guarded(seq[t - 1], seq[t]);
    out.timing.total_ms += elapsed_ms(start);
  }
  out.timing.pairs = seq.size() - 1;
  out.timing.mean_ms = out.timing.total_ms / static_cast<double>(out.timing.pairs);
  out.degenerate = nan_positions(out.values);
  return out;
}

std::vector<double> invert_normalize(std::span<const double> raw) {
  require_finite(raw, "invert_normalize");
  const double top = *std::max_element(raw.begin(), raw.end());
  std::vector<double> out(raw.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < raw.size(); ++t) {
    out[t] = top - raw[t];
    sum += out[t];
  }
  if (sum == 0.0) return uniform(raw.size());
  for (double& v : out) v /= sum;
  return out;
}

std::vector<double> l1_normalize(std::span<const double> raw) {
  require_finite(raw, "l1_normalize");
  double sum = 0.0;
  for (double v : raw) {
    if (v < 0.0) throw NumericalError("l1_normalize: negative score");
    sum += v;
  }
  if (sum == 0.0) return uniform(raw.size());
  std::vector<double> out(raw.begin(), raw.end());
  for (double& v : out) v /= sum;
  return out;
}

double shifted_leaky_relu(double x, double mu, double alpha) {
  if (x <= mu) return alpha * x;
  if (mu >= 1.0) return x;
  return (1.0 - alpha * mu) / (1.0 - mu) * (x - 1.0) + 1.0;
}

std::vector<double> shifted_leaky_relu(std::span<const double> normalized, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ConfigError("alpha must be in [0, 1], got " + std::to_string(alpha));
  }
  require_finite(normalized, "shifted_leaky_relu");
  const double mu = std::accumulate(normalized.begin(), normalized.end(), 0.0) /
                    static_cast<double>(normalized.size());
  std::vector<double> out(normalized.size());
  double sum = 0.0;
  for (std::size_t t = 0; t < normalized.size(); ++t) {
    out[t] = shifted_leaky_relu(normalized[t], mu, alpha);
    sum += out[t];
  }
  // alpha = 0 with every score at the mean maps everything to 0.
  if (sum == 0.0) return uniform(normalized.size());
  for (double& v : out) v /= sum;
  return out;
}

std::vector<double> cumulate(std::span<const double> remapped) {
  require_finite(remapped, "cumulate");
  std::vector<double> cdf(remapped.size());
  double acc = 0.0;
  for (std::size_t t = 0; t < remapped.size(); ++t) {
    acc += remapped[t];
    cdf[t] = acc;
  }
  if (std::abs(acc - 1.0) > 1e-9) {
    throw NumericalError("cumulative mass is " + std::to_string(acc) + ", expected 1");
  }
  for (double& v : cdf) v = std::min(v, 1.0);
  cdf.back() = 1.0;
  return cdf;
}

ScoreSeries finish_scores(const RawScores& raw, const ScoreConfig& config) {
  validate(config);
  const bool similarity = direction(config.metric) == MetricDirection::kSimilarity;
  ScoreSeries out;
  out.alpha = config.alpha;
  out.raw = raw.values;
  out.degenerate = nan_positions(out.raw);

  // Undefined pairs count as maximally similar within this video.
  std::optional<double> extreme;
  for (double v : out.raw) {
    if (std::isnan(v)) continue;
    extreme = !extreme ? v : (similarity ? std::max(*extreme, v) : std::min(*extreme, v));
  }
  for (double& v : out.raw) {
    if (std::isnan(v)) v = extreme.value_or(0.0);
  }

  if (config.exclude_t0_mass && out.raw.size() > 1) {
    const auto rest = std::span<const double>(out.raw).subspan(1);
    out.raw[0] = similarity ? *std::max_element(rest.begin(), rest.end())
                            : *std::min_element(rest.begin(), rest.end());
  }

  out.normalized = similarity ? invert_normalize(out.raw) : l1_normalize(out.raw);
  out.mean = std::accumulate(out.normalized.begin(), out.normalized.end(), 0.0) /
             static_cast<double>(out.normalized.size());
  out.remapped = shifted_leaky_relu(out.normalized, config.alpha);
  out.cdf = cumulate(out.remapped);
  return out;
}

ScoreSeries score_video(const FrameSequence& seq, const ScoreConfig& config) {
  return finish_scores(raw_scores(seq, config), config);
}

std::vector<MetricComparison> compare_metrics(const FrameSequence& seq,
                                              const std::vector<MetricKind>& metrics,
                                              const ScoreConfig& base) {
  if (metrics.empty()) throw ConfigError("no metrics to compare");
  std::vector<MetricComparison> rows;
  for (auto kind : metrics) {
    ScoreConfig config = base;
    config.metric = kind;
    const auto raw = timed_raw_scores(seq, config);
    rows.push_back({kind, finish_scores(raw, config), raw.timing});
  }
  return rows;
}

}  // namespace pmis
