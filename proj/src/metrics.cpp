#include "pmis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pmis/error.hpp"

namespace pmis {
namespace {

void require_same_shape(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw ConfigError("frames differ in shape");
  if (a.size() == 0) throw ConfigError("empty frames");
}

}  // namespace

MetricDirection direction(MetricKind kind) {
  return kind == MetricKind::kEuclidean ? MetricDirection::kDistance : MetricDirection::kSimilarity;
}

std::string_view metric_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::kPmi: return "pmi";
    case MetricKind::kEuclidean: return "euclidean";
    case MetricKind::kCosine: return "cosine";
    case MetricKind::kPsnr: return "psnr";
    case MetricKind::kHistogramMi: return "histogram_mi";
  }
  return "unknown";
}

const std::vector<MetricKind>& all_metrics() {
  static const std::vector<MetricKind> kAll = {MetricKind::kPmi, MetricKind::kEuclidean,
                                               MetricKind::kCosine, MetricKind::kPsnr,
                                               MetricKind::kHistogramMi};
  return kAll;
}

MetricKind parse_metric(std::string_view name) {
  for (auto kind : all_metrics()) {
    if (metric_name(kind) == name) return kind;
  }
  throw ConfigError("unknown metric '" + std::string(name) +
                    "' (expected pmi, euclidean, cosine, psnr or histogram_mi)");
}

std::vector<MetricKind> parse_metric_list(std::string_view names) {
  std::vector<MetricKind> out;
  std::size_t pos = 0;
  while (pos <= names.size()) {
    const auto comma = names.find(',', pos);
    const auto item = names.substr(pos, comma == std::string_view::npos ? names.npos : comma - pos);
    if (!item.empty()) out.push_back(parse_metric(item));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  if (out.empty()) throw ConfigError("metric list is empty");
  return out;
}

double euclidean(const Image& a, const Image& b) {
  require_same_shape(a, b);
  const auto va = a.values();
  const auto vb = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const double diff = va[i] - vb[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double cosine(const Image& a, const Image& b) {
  require_same_shape(a, b);
  const auto va = a.values();
  const auto vb = b.values();
  double dot = 0.0;
  double na = 0.0;
  double nb = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    dot += va[i] * vb[i];
    na += va[i] * va[i];
    nb += vb[i] * vb[i];
  }
  if (na == 0.0 || nb == 0.0) throw DegenerateInputError("cosine similarity of a zero-norm frame");
  return std::clamp(dot / (std::sqrt(na) * std::sqrt(nb)), -1.0, 1.0);
}

double psnr(const Image& a, const Image& b) {
  require_same_shape(a, b);
  const auto va = a.values();
  const auto vb = b.values();
  double sum = 0.0;
  for (std::size_t i = 0; i < va.size(); ++i) {
    const double diff = va[i] - vb[i];
    sum += diff * diff;
  }
  if (sum == 0.0) return std::numeric_limits<double>::infinity();
  const double mse = sum / static_cast<double>(va.size());
  return 10.0 * std::log10(1.0 / mse);
}

std::size_t histogram_bin(double value, std::size_t bins) {
  if (!(value > 0.0)) return 0;
  const double scaled = std::floor(value * static_cast<double>(bins));
  return std::min(static_cast<std::size_t>(scaled), bins - 1);
}

double histogram_mi(const Image& a, const Image& b, std::size_t bins) {
  require_same_shape(a, b);
  if (bins < 2) throw ConfigError("histogram needs at least 2 bins");
  const auto va = a.values();
  const auto vb = b.values();
  std::vector<std::size_t> joint(bins * bins, 0);
  std::vector<std::size_t> ca(bins, 0);
  std::vector<std::size_t> cb(bins, 0);
  for (std::size_t i = 0; i < va.size(); ++i) {
    const auto x = histogram_bin(va[i], bins);
    const auto y = histogram_bin(vb[i], bins);
    ++joint[x * bins + y];
    ++ca[x];
    ++cb[y];
  }
  const double n = static_cast<double>(va.size());
  const double log_n = std::log(n);
  double mi = 0.0;
  for (std::size_t x = 0; x < bins; ++x) {
    if (ca[x] == 0) continue;
    const double log_cx = std::log(static_cast<double>(ca[x]));
    for (std::size_t y = 0; y < bins; ++y) {
      const auto c = joint[x * bins + y];
      if (c == 0) continue;  // 0 log 0 := 0
      const double cd = static_cast<double>(c);
      mi += cd * (std::log(cd) + log_n - log_cx - std::log(static_cast<double>(cb[y])));
    }
  }
  return std::max(0.0, mi / n);
}

}  // namespace pmis
