#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "pmis/error.hpp"
#include "pmis/score_pipeline.hpp"
#include "pmis/synth.hpp"

using namespace pmis;

namespace {

void check_close(const std::vector<double>& got, const std::vector<double>& want, double tol) {
  REQUIRE(got.size() == want.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) <= tol);
}

double sum(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0); }

FrameSequence noise_video(std::size_t frames, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  FrameSequence seq;
  Image prev(16, 16, 1);
  for (double& v : prev.values()) v = u(rng);
  for (std::size_t t = 0; t < frames; ++t) {
    Image next = prev;
    // Mix in a varying amount of fresh noise so pairs differ in similarity.
    const double w = 0.1 + 0.8 * u(rng);
    for (double& v : next.values()) v = (1.0 - w) * v + w * u(rng);
    seq.push_back(next);
    prev = next;
  }
  return seq;
}

}  // namespace

TEST_CASE("config validation") {
  ScoreConfig c;
  CHECK(c.patch_size == 7);
  CHECK(c.alpha == 0.3);
  CHECK_NOTHROW(validate(c));
  c.alpha = 1.5;
  CHECK_THROWS_WITH_AS(validate(c), doctest::Contains("[0, 1]"), ConfigError);
  c.alpha = -0.1;
  CHECK_THROWS_AS(validate(c), ConfigError);
  c.alpha = 0.3;
  c.patch_size = 0;
  CHECK_THROWS_AS(validate(c), ConfigError);
}

TEST_CASE("invert and normalize") {
  check_close(invert_normalize(std::vector<double>{0, 2, 5, 3}), {0.5, 0.3, 0.0, 0.2}, 1e-15);
  check_close(invert_normalize(std::vector<double>{4, 4, 4}), {1.0 / 3, 1.0 / 3, 1.0 / 3}, 1e-15);
  check_close(invert_normalize(std::vector<double>{5, 5, 1}), {0.0, 0.0, 1.0}, 0.0);
  CHECK_THROWS_AS(invert_normalize(std::vector<double>{0, std::nan("")}), NumericalError);

  check_close(l1_normalize(std::vector<double>{0, 1, 3}), {0.0, 0.25, 0.75}, 1e-15);
  check_close(l1_normalize(std::vector<double>{0, 0}), {0.5, 0.5}, 0.0);
}

TEST_CASE("shifted leaky relu: knee, anchor, interior") {
  CHECK(shifted_leaky_relu(0.1, 0.1, 0.3) == doctest::Approx(0.03).epsilon(1e-14));
  CHECK(shifted_leaky_relu(1.0, 0.1, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(shifted_leaky_relu(0.55, 0.1, 0.3) == doctest::Approx(0.515).epsilon(1e-14));
  CHECK(shifted_leaky_relu(0.0, 0.1, 0.3) == 0.0);
}

TEST_CASE("shifted leaky relu: continuity and monotonicity") {
  for (double alpha : {0.0, 0.3, 0.6, 1.0})
    for (double mu : {0.01, 0.1, 0.25, 0.5}) {
      const double below = shifted_leaky_relu(mu, mu, alpha);
      const double above = shifted_leaky_relu(std::nextafter(mu, 1.0), mu, alpha);
      CHECK(std::abs(below - alpha * mu) < 1e-15);
      CHECK(std::abs(above - below) < 1e-12);
      double last = -1.0;
      for (int i = 0; i <= 1000; ++i) {
        const double y = shifted_leaky_relu(i / 1000.0, mu, alpha);
        CHECK(y >= last - 1e-15);
        last = y;
      }
    }
}

TEST_CASE("shifted leaky relu: polarizes around the mean") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> raw(20);
    for (double& v : raw) v = u(rng);
    auto normalized = l1_normalize(raw);
    const double alpha = u(rng);
    const double mu = sum(normalized) / 20.0;
    auto remapped = shifted_leaky_relu(normalized, alpha);
    CHECK(std::abs(sum(remapped) - 1.0) < 1e-12);
    // Below-mean shares shrink, the largest share grows, and the gain
    // remapped / normalized never decreases with the score.
    const auto top = static_cast<std::size_t>(
        std::max_element(normalized.begin(), normalized.end()) - normalized.begin());
    CHECK(remapped[top] >= normalized[top] - 1e-15);
    for (std::size_t i = 0; i < 20; ++i) {
      if (normalized[i] < mu) CHECK(remapped[i] <= normalized[i] + 1e-15);
      for (std::size_t j = 0; j < 20; ++j)
        if (normalized[i] < normalized[j])
          CHECK(remapped[i] / normalized[i] <= remapped[j] / normalized[j] * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("shifted leaky relu: alpha zero and degenerate input") {
  std::vector<double> n = {0.05, 0.05, 0.4, 0.5};
  auto r = shifted_leaky_relu(n, 0.0);
  CHECK(r[0] == 0.0);
  CHECK(r[1] == 0.0);
  CHECK(r[2] > 0.0);
  auto flat = shifted_leaky_relu(std::vector<double>{0.25, 0.25, 0.25, 0.25}, 0.0);
  check_close(flat, {0.25, 0.25, 0.25, 0.25}, 0.0);
  CHECK_THROWS_AS(shifted_leaky_relu(n, 1.2), ConfigError);
}

TEST_CASE("cumulate") {
  check_close(cumulate(std::vector<double>{0.5, 0.3, 0.0, 0.2}), {0.5, 0.8, 0.8, 1.0}, 1e-15);
  check_close(cumulate(std::vector<double>{0.25, 0.25, 0.25, 0.25}), {0.25, 0.5, 0.75, 1.0}, 0.0);
  check_close(cumulate(std::vector<double>{0, 0, 1, 0, 0}), {0, 0, 1, 1, 1}, 0.0);
  CHECK_THROWS_AS(cumulate(std::vector<double>{0.5, 0.4}), NumericalError);
  std::vector<double> tenth(10, 0.1);
  CHECK(cumulate(tenth).back() == 1.0);
}

TEST_CASE("degenerate pairs take the video's most similar value") {
  RawScores raw;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  raw.values = {0.0, 3.0, nan, 1.0};
  ScoreConfig pmi_cfg;
  ScoreSeries s = finish_scores(raw, pmi_cfg);
  CHECK(s.raw == std::vector<double>{0.0, 3.0, 3.0, 1.0});
  CHECK(s.degenerate == std::vector<std::size_t>{2});

  ScoreConfig dist;
  dist.metric = MetricKind::kEuclidean;
  ScoreSeries d = finish_scores(raw, dist);
  CHECK(d.raw == std::vector<double>{0.0, 3.0, 0.0, 1.0});

  raw.values = {0.0, nan, nan, nan};
  ScoreSeries all = finish_scores(raw, pmi_cfg);
  check_close(all.remapped, {0.25, 0.25, 0.25, 0.25}, 0.0);
}

TEST_CASE("exclude_t0_mass removes the head bias") {
  RawScores raw;
  raw.values = {0.0, 2.0, 5.0, 3.0};
  ScoreConfig c;
  ScoreSeries with = finish_scores(raw, c);
  CHECK(with.normalized[0] == doctest::Approx(0.5));
  c.exclude_t0_mass = true;
  ScoreSeries without = finish_scores(raw, c);
  CHECK(without.raw[0] == 5.0);
  CHECK(without.normalized[0] == 0.0);
  check_close(without.normalized, {0.0, 0.6, 0.0, 0.4}, 1e-15);
}

TEST_CASE("score_video: series invariants") {
  FrameSequence seq = noise_video(12, 1);
  for (MetricKind k : all_metrics()) {
    ScoreConfig c;
    c.metric = k;
    c.patch_size = 2;
    ScoreSeries s = score_video(seq, c);
    CHECK(s.raw.size() == 12);
    CHECK(s.cdf.size() == 12);
    CHECK(s.raw[0] == 0.0);
    CHECK(std::abs(sum(s.normalized) - 1.0) < 1e-9);
    CHECK(std::abs(sum(s.remapped) - 1.0) < 1e-9);
    for (double v : s.normalized) CHECK(v >= 0.0);
    for (double v : s.remapped) CHECK(v >= 0.0);
    for (std::size_t t = 1; t < 12; ++t) CHECK(s.cdf[t] >= s.cdf[t - 1]);
    CHECK(s.cdf.back() == 1.0);
    CHECK(s.mean == doctest::Approx(1.0 / 12));
  }
}

TEST_CASE("score_video: euclidean skips inversion") {
  FrameSequence seq = noise_video(6, 2);
  ScoreConfig c;
  c.metric = MetricKind::kEuclidean;
  ScoreSeries s = score_video(seq, c);
  check_close(s.normalized, l1_normalize(s.raw), 0.0);
}

TEST_CASE("score_video: deterministic and thread-count independent") {
  FrameSequence seq = noise_video(10, 3);
  ScoreConfig c;
  c.patch_size = 2;
  c.threads = 1;
  ScoreSeries one = score_video(seq, c);
  c.threads = 3;
  ScoreSeries three = score_video(seq, c);
  CHECK(one.raw == three.raw);
  CHECK(one.cdf == three.cdf);
  CHECK(score_video(seq, c).remapped == three.remapped);
}

TEST_CASE("score_video: reversal mirrors pairwise values") {
  FrameSequence seq = noise_video(9, 4);
  FrameSequence rev;
  for (std::size_t t = seq.size(); t-- > 0;) rev.push_back(seq[t]);
  ScoreConfig c;
  c.patch_size = 2;
  auto fwd = raw_scores(seq, c).values;
  auto bwd = raw_scores(rev, c).values;
  const std::size_t n = seq.size();
  for (std::size_t t = 1; t < n; ++t)
    CHECK(std::abs(bwd[t] - fwd[n - t]) <= 1e-9 * std::abs(fwd[n - t]));
}

TEST_CASE("score_video: static video is uniform") {
  FrameSequence seq = render(uniform_scene(16));
  ScoreSeries s = score_video(seq, ScoreConfig{});
  CHECK(s.degenerate.size() == 15);
  for (std::size_t t = 0; t < 16; ++t) {
    CHECK(s.remapped[t] == doctest::Approx(1.0 / 16).epsilon(1e-12));
    CHECK(s.cdf[t] == doctest::Approx((t + 1) / 16.0).epsilon(1e-12));
  }
}

TEST_CASE("score_video: burst concentrates mass in the motion window") {
  for (std::size_t jitter : {0u, 2u}) {
    FrameSequence seq = render(burst_scene(jitter, 5));
    ScoreConfig c;
    c.patch_size = kBurstPatchSize;
    ScoreSeries s = score_video(seq, c);
    double mass = 0.0;
    for (std::size_t t = 20; t <= 40; ++t) mass += s.remapped[t];
    CHECK(mass > 21.0 / 64.0);
  }
}

TEST_CASE("score_video: too few frames") {
  FrameSequence one;
  one.push_back(Image(16, 16, 1, 0.5));
  CHECK_THROWS_AS(score_video(one, ScoreConfig{}), IngestError);
}

TEST_CASE("compare_metrics: one row per metric with timing") {
  FrameSequence seq = noise_video(5, 6);
  ScoreConfig base;
  base.patch_size = 2;
  auto rows = compare_metrics(seq, all_metrics(), base);
  REQUIRE(rows.size() == 5);
  for (const auto& row : rows) {
    CHECK(row.timing.pairs == 4);
    CHECK(row.timing.mean_ms >= 0.0);
    CHECK(row.scores.raw.size() == 5);
  }
  CHECK_THROWS_AS(compare_metrics(seq, {}, base), ConfigError);
}
