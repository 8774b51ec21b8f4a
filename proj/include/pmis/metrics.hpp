#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "pmis/image.hpp"

namespace pmis {

enum class MetricKind { kPmi, kEuclidean, kCosine, kPsnr, kHistogramMi };

// kSimilarity: larger means the two frames are more alike.
enum class MetricDirection { kSimilarity, kDistance };

MetricDirection direction(MetricKind kind);
std::string_view metric_name(MetricKind kind);
// Throws ConfigError for unknown names.
MetricKind parse_metric(std::string_view name);
// Comma separated list, e.g. "pmi,euclidean".
std::vector<MetricKind> parse_metric_list(std::string_view names);
const std::vector<MetricKind>& all_metrics();

inline constexpr std::size_t kDefaultHistogramBins = 64;

double euclidean(const Image& a, const Image& b);

// Throws DegenerateInputError if either frame has zero norm.
double cosine(const Image& a, const Image& b);

// 10 log10(1 / MSE) with MAX = 1. Identical frames give +infinity.
double psnr(const Image& a, const Image& b);

// Bin index of an intensity in [0, 1] for a uniform histogram.
std::size_t histogram_bin(double value, std::size_t bins);

// Mutual information (nats) of the joint pixel co-occurrence histogram.
double histogram_mi(const Image& a, const Image& b, std::size_t bins = kDefaultHistogramBins);

}  // namespace pmis
