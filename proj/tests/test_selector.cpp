#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "pmis/error.hpp"
#include "pmis/selector.hpp"
#include "pmis/synth.hpp"

using namespace pmis;

namespace {

std::vector<double> uniform_cdf(std::size_t frames) {
  return cumulate(std::vector<double>(frames, 1.0 / static_cast<double>(frames)));
}

void check_partition(const Segmentation& s, std::size_t frames, std::size_t n) {
  REQUIRE(s.segments.size() == n);
  REQUIRE(s.boundaries.size() == n + 1);
  CHECK(s.boundaries.front() == -1);
  CHECK(s.boundaries.back() == static_cast<std::int64_t>(frames) - 1);
  std::size_t next = 0;
  for (const Segment& seg : s.segments) {
    CHECK(seg.first == next);
    CHECK(seg.last >= seg.first);
    next = seg.last + 1;
  }
  CHECK(next == frames);
}

FrameSequence flat_video(std::size_t frames) {
  FrameSequence seq;
  for (std::size_t t = 0; t < frames; ++t) seq.push_back(Image(16, 16, 1, 0.5));
  return seq;
}

}  // namespace

TEST_CASE("inverse cdf point") {
  std::vector<double> cdf = {0.5, 0.8, 0.8, 1.0};
  CHECK(inverse_cdf_point(cdf, 0.5) == 0.0);
  CHECK(inverse_cdf_point(cdf, 0.25) == doctest::Approx(-0.5));
  CHECK(inverse_cdf_point(cdf, 0.9) == doctest::Approx(2.5));
  CHECK(inverse_cdf_point(cdf, 0.8) == doctest::Approx(1.0));
}

TEST_CASE("segment: uniform cdf") {
  Segmentation s = segment(uniform_cdf(16), 8);
  check_partition(s, 16, 8);
  for (const Segment& seg : s.segments) CHECK(seg.length() == 2);
}

TEST_CASE("segment: uniform cdf, uneven split differs by at most one") {
  for (std::size_t frames = 1; frames <= 70; ++frames)
    for (std::size_t n = 1; n <= frames; n += 3) {
      Segmentation s = segment(uniform_cdf(frames), n);
      check_partition(s, frames, n);
      std::size_t lo = frames, hi = 0;
      for (const Segment& seg : s.segments) {
        lo = std::min(lo, seg.length());
        hi = std::max(hi, seg.length());
      }
      CHECK(hi - lo <= 1);
    }
}

TEST_CASE("segment: interpolated example") {
  Segmentation s = segment(std::vector<double>{0.5, 0.8, 0.8, 1.0}, 2);
  CHECK(s.segments[0] == Segment{0, 0});
  CHECK(s.segments[1] == Segment{1, 3});
}

TEST_CASE("segment: spikes keep every segment nonempty") {
  for (std::size_t k = 0; k < 10; ++k) {
    std::vector<double> mass(10, 0.0);
    mass[k] = 1.0;
    auto cdf = cumulate(mass);
    for (std::size_t n = 1; n <= 10; ++n) check_partition(segment(cdf, n), 10, n);
    Segmentation two = segment(cdf, 2);
    // The crossing sits half a frame before the spike and rounds up onto it.
    CHECK(two.segments[0].last == std::min<std::size_t>(k, 8));
  }
}

TEST_CASE("segment: errors") {
  CHECK_THROWS_WITH_AS(segment(uniform_cdf(4), 5), doctest::Contains("--allow-repeat"),
                       ConfigError);
  CHECK_THROWS_AS(segment(uniform_cdf(4), 0), ConfigError);
}

TEST_CASE("segment: mass in a window earns proportional selections") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t frames = 40 + rng() % 60;
    const std::size_t n = 2 + rng() % 10;
    std::vector<double> mass(frames);
    for (double& m : mass) m = 0.2 + u(rng);
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    for (double& m : mass) m /= total;
    auto cdf = cumulate(mass);
    Segmentation s = segment(cdf, n);
    auto picks = select_indices(s, SelectMode::kRandom, rng());
    const std::size_t a = rng() % frames;
    const std::size_t b = a + rng() % (frames - a);
    const double f = cdf[b] - (a == 0 ? 0.0 : cdf[a - 1]);
    const auto inside = std::count_if(picks.begin(), picks.end(),
                                      [&](std::size_t i) { return i >= a && i <= b; });
    CHECK(inside >= static_cast<long>(std::floor(f * n)) - 1);
    CHECK(inside <= static_cast<long>(std::ceil(f * n)) + 1);
  }
}

TEST_CASE("select: center mode takes the lower median") {
  Segmentation s = segment(uniform_cdf(4), 2);
  CHECK(select_indices(s, SelectMode::kCenter, 0) == std::vector<std::size_t>{0, 2});
  Segmentation three;
  three.boundaries = {-1, 2, 3};
  three.segments = {{0, 2}, {3, 3}};
  CHECK(select_indices(three, SelectMode::kCenter, 0) == std::vector<std::size_t>{1, 3});
}

TEST_CASE("select: random mode") {
  Segmentation s;
  s.boundaries = {-1, 2, 3};
  s.segments = {{0, 2}, {3, 3}};
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    auto idx = select_indices(s, SelectMode::kRandom, seed);
    CHECK(idx[0] <= 2);
    CHECK(idx[1] == 3);
    CHECK(idx == select_indices(s, SelectMode::kRandom, seed));
  }
  // One 64-bit output per segment, scaled by the segment length.
  std::mt19937_64 rng(5);
  const std::uint64_t u = rng();
  const auto expected = static_cast<std::size_t>((static_cast<unsigned __int128>(u) * 3) >> 64);
  CHECK(select_indices(s, SelectMode::kRandom, 5)[0] == expected);

  Segmentation wide = segment(uniform_cdf(64), 8);
  std::vector<int> hits(64, 0);
  for (std::uint64_t seed = 0; seed < 800; ++seed)
    for (std::size_t i : select_indices(wide, SelectMode::kRandom, seed)) ++hits[i];
  for (int h : hits) CHECK(h > 50);
}

TEST_CASE("select: indices lie inside their segments and are sorted") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> mass(30);
    for (double& m : mass) m = u(rng) < 0.3 ? 0.0 : u(rng);
    mass[rng() % 30] += 0.1;
    const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
    for (double& m : mass) m /= total;
    Segmentation s = segment(cumulate(mass), 1 + rng() % 30);
    auto idx = select_indices(s, SelectMode::kRandom, rng());
    for (std::size_t k = 0; k < idx.size(); ++k) {
      CHECK(idx[k] >= s.segments[k].first);
      CHECK(idx[k] <= s.segments[k].last);
    }
    CHECK(std::is_sorted(idx.begin(), idx.end()));
  }
}

TEST_CASE("pad_repeat") {
  CHECK(pad_repeat(3, 6) == std::vector<std::size_t>{0, 0, 1, 1, 2, 2});
  CHECK(pad_repeat(1, 4) == std::vector<std::size_t>{0, 0, 0, 0});
  CHECK(pad_repeat(4, 6) == std::vector<std::size_t>{0, 0, 1, 2, 2, 3});
  for (std::size_t frames = 1; frames < 12; ++frames)
    for (std::size_t n = frames; n < 30; ++n) {
      auto idx = pad_repeat(frames, n);
      std::vector<std::size_t> counts(frames, 0);
      for (std::size_t i : idx) ++counts[i];
      auto [lo, hi] = std::minmax_element(counts.begin(), counts.end());
      CHECK(*hi - *lo <= 1);
      CHECK(std::is_sorted(idx.begin(), idx.end()));
    }
}

TEST_CASE("derive_seed") {
  CHECK(derive_seed(0, "") == 14695981039346656037ULL);
  CHECK(derive_seed(7, "video_a") == derive_seed(7, "video_a"));
  CHECK(derive_seed(7, "video_a") != derive_seed(7, "video_b"));
  CHECK((derive_seed(7, "video_a") ^ derive_seed(0, "video_a")) == 7);
}

TEST_CASE("mode names") {
  CHECK(parse_mode("random") == SelectMode::kRandom);
  CHECK(parse_mode(mode_name(SelectMode::kCenter)) == SelectMode::kCenter);
  CHECK_THROWS_AS(parse_mode("middle"), ConfigError);
}

TEST_CASE("clip ranges") {
  auto r = clip_ranges(400, 10);
  REQUIRE(r.size() == 10);
  for (std::size_t k = 0; k < 10; ++k) CHECK(r[k] == ClipRange{40 * k, 40});
  auto uneven = clip_ranges(10, 3);
  CHECK(uneven[0] == ClipRange{0, 3});
  CHECK(uneven[1] == ClipRange{3, 3});
  CHECK(uneven[2] == ClipRange{6, 4});
  CHECK_THROWS_AS(clip_ranges(5, 10), ConfigError);
}

TEST_CASE("select_video: uniform video, center mode") {
  SelectConfig c;
  c.num_frames = 8;
  c.scoring.patch_size = 2;
  SelectionReport r = select_video(flat_video(32), c);
  CHECK(r.indices == std::vector<std::size_t>{1, 5, 9, 13, 17, 21, 25, 29});
}

TEST_CASE("select_video: too few frames") {
  SelectConfig c;
  c.num_frames = 8;
  c.scoring.patch_size = 2;
  CHECK_THROWS_WITH_AS(select_video(flat_video(5), c), doctest::Contains("--allow-repeat"),
                       ConfigError);
  c.allow_repeat = true;
  SelectionReport r = select_video(flat_video(5), c);
  CHECK(r.indices == pad_repeat(5, 8));
  CHECK(r.clips[0].padded);
  CHECK_FALSE(r.clips[0].segmentation.has_value());
}

TEST_CASE("dense clips") {
  SelectConfig c;
  c.scoring.patch_size = 2;
  c.mode = SelectMode::kRandom;
  c.seed = 3;
  SelectionReport r = dense_clip_select(flat_video(400), 10, 8, c);
  REQUIRE(r.indices.size() == 80);
  for (std::size_t k = 0; k < 10; ++k)
    for (std::size_t j = 0; j < 8; ++j) {
      const std::size_t i = r.indices[k * 8 + j];
      CHECK(i >= 40 * k);
      CHECK(i < 40 * (k + 1));
    }
  CHECK(std::is_sorted(r.indices.begin(), r.indices.end()));

  SelectConfig center;
  center.scoring.patch_size = 2;
  SelectionReport even = dense_clip_select(flat_video(8), 2, 2, center);
  CHECK(even.indices == std::vector<std::size_t>{0, 2, 4, 6});

  CHECK_THROWS_AS(dense_clip_select(flat_video(8), 10, 1, center), ConfigError);
}

TEST_CASE("dense clips: a single clip is plain selection") {
  FrameSequence seq = render(burst_scene(0, 1));
  SelectConfig c;
  c.scoring.patch_size = kBurstPatchSize;
  c.mode = SelectMode::kRandom;
  c.seed = 99;
  c.num_frames = 8;
  SelectionReport plain = select_video(seq, c);
  SelectionReport dense = dense_clip_select(seq, 1, 8, c);
  CHECK(plain.indices == dense.indices);
  CHECK(plain.clips[0].scores->raw == dense.clips[0].scores->raw);
}

TEST_CASE("select_video: deterministic") {
  FrameSequence seq = render(burst_scene(2, 4));
  SelectConfig c;
  c.scoring.patch_size = kBurstPatchSize;
  c.mode = SelectMode::kRandom;
  c.seed = 7;
  c.num_frames = 8;
  SelectionReport a = select_video(seq, c);
  c.scoring.threads = 1;
  SelectionReport b = select_video(seq, c);
  CHECK(a.indices == b.indices);
  CHECK(a.clips[0].scores->raw == b.clips[0].scores->raw);
}
