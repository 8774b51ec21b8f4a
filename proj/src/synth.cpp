#include "pmis/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "pmis/error.hpp"

namespace pmis {
namespace {

constexpr std::uint64_t kBackgroundStream = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSensorStream = 0xD1B54A32D192ED03ULL;

double unit_draw(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::int64_t offset_draw(std::mt19937_64& rng, std::size_t jitter) {
  const unsigned __int128 u = rng();
  return static_cast<std::int64_t>((u * (2 * jitter + 1)) >> 64) - static_cast<std::int64_t>(jitter);
}

double on_u8_grid(double v) { return std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0; }

// Periodic background: a few random low-frequency waves plus per-pixel
// texture, rescaled to [0.1, 0.9]. Periodicity makes camera translation a
// seamless wrap-around.
std::vector<double> noise_plane(std::size_t h, std::size_t w, int max_freq, double grain_weight,
                                std::mt19937_64& rng) {
  const int kMaxFreq = max_freq;
  struct Wave {
    double fy, fx, amp, phase;
  };
  std::vector<Wave> waves;
  for (int fy = -kMaxFreq; fy <= kMaxFreq; ++fy) {
    for (int fx = 0; fx <= kMaxFreq; ++fx) {
      if (fx == 0 && fy <= 0) continue;
      const double amp = unit_draw(rng) / std::hypot(fx, fy);
      const double phase = 2.0 * std::numbers::pi * unit_draw(rng);
      waves.push_back({static_cast<double>(fy), static_cast<double>(fx), amp, phase});
    }
  }
  std::vector<double> smooth(h * w, 0.0);
  std::vector<double> grain(h * w);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      double v = 0.0;
      for (const auto& wv : waves) {
        v += wv.amp * std::cos(2.0 * std::numbers::pi *
                                   (wv.fy * static_cast<double>(y) / static_cast<double>(h) +
                                    wv.fx * static_cast<double>(x) / static_cast<double>(w)) +
                               wv.phase);
      }
      smooth[y * w + x] = v;
      grain[y * w + x] = unit_draw(rng);
    }
  }
  const auto [lo, hi] = std::minmax_element(smooth.begin(), smooth.end());
  const double span = *hi - *lo > 0.0 ? *hi - *lo : 1.0;
  std::vector<double> out(h * w);
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = 0.1 + 0.8 * ((1.0 - grain_weight) * (smooth[i] - *lo) / span + grain_weight * grain[i]);
  }
  return out;
}

// H x W x C background, channel-interleaved.
std::vector<double> background(const SceneSpec& spec) {
  const std::size_t h = spec.height;
  const std::size_t w = spec.width;
  const std::size_t c_n = spec.channels;
  std::vector<double> out(h * w * c_n, spec.background_level);
  if (spec.background == Background::kGradient) {
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        const double ramp = w > 1 ? static_cast<double>(x) / static_cast<double>(w - 1) - 0.5 : 0.0;
        for (std::size_t c = 0; c < c_n; ++c) {
          out[(y * w + x) * c_n + c] = spec.background_level + 0.8 * ramp;
        }
      }
    }
  } else if (spec.background == Background::kNoise) {
    std::mt19937_64 rng(spec.seed ^ kBackgroundStream);
    for (std::size_t c = 0; c < c_n; ++c) {
      const auto plane = noise_plane(h, w, static_cast<int>(spec.noise_max_frequency),
                                     spec.noise_grain, rng);
      for (std::size_t i = 0; i < h * w; ++i) out[i * c_n + c] = plane[i];
    }
  }
  for (double& v : out) v = on_u8_grid(v);
  return out;
}

std::int64_t steps_at(const SceneSpec& spec, std::size_t t) {
  if (!spec.motion_window) return 0;
  const auto& win = *spec.motion_window;
  if (t < win.start) return 0;
  return static_cast<std::int64_t>(std::min(t, win.end) - win.start + 1);
}

}  // namespace

void validate(const SceneSpec& spec) {
  if (spec.height == 0 || spec.width == 0) throw ConfigError("scene size must be positive");
  if (spec.channels != 1 && spec.channels != 3) throw ConfigError("scene channels must be 1 or 3");
  if (spec.frames == 0) throw ConfigError("scene needs at least one frame");
  if (!(spec.background_level >= 0.0 && spec.background_level <= 1.0) ||
      !(spec.sprite_intensity >= 0.0 && spec.sprite_intensity <= 1.0)) {
    throw ConfigError("scene intensities must lie in [0, 1]");
  }
  if (!(spec.noise_grain >= 0.0 && spec.noise_grain <= 1.0)) {
    throw ConfigError("noise grain must lie in [0, 1]");
  }
  if (!(spec.sensor_noise >= 0.0 && spec.sensor_noise <= 1.0)) {
    throw ConfigError("sensor noise must lie in [0, 1]");
  }
  if (spec.noise_max_frequency == 0) throw ConfigError("noise frequency must be at least 1");
  if (spec.motion_window) {
    const auto& win = *spec.motion_window;
    if (win.start > win.end || win.end >= spec.frames) {
      throw ConfigError("motion window [" + std::to_string(win.start) + ", " +
                        std::to_string(win.end) + "] is not inside [0, " +
                        std::to_string(spec.frames) + ")");
    }
  }
  if (spec.sprite_size == 0) return;
  const auto j = static_cast<std::int64_t>(camera_bound(spec));
  const auto size = static_cast<std::int64_t>(spec.sprite_size);
  // Motion is linear, so the extremes are the first and last positions.
  for (std::size_t t : {std::size_t{0}, spec.frames - 1}) {
    const auto p = sprite_position(spec, t);
    if (p.x - j < 0 || p.y - j < 0 || p.x + size + j > static_cast<std::int64_t>(spec.width) ||
        p.y + size + j > static_cast<std::int64_t>(spec.height)) {
      throw ConfigError("sprite leaves the frame at t=" + std::to_string(t));
    }
  }
}

Point sprite_position(const SceneSpec& spec, std::size_t t) {
  const auto steps = steps_at(spec, t);
  return {spec.sprite_x + spec.velocity_x * steps, spec.sprite_y + spec.velocity_y * steps};
}

std::vector<Point> camera_offsets(const SceneSpec& spec) {
  std::vector<Point> out(spec.frames);
  if (spec.camera_jitter == 0) return out;
  const auto bound = static_cast<std::int64_t>(camera_bound(spec));
  std::mt19937_64 rng(spec.seed);
  Point at;
  for (auto& p : out) {
    at.x = std::clamp(at.x + offset_draw(rng, spec.camera_jitter), -bound, bound);
    at.y = std::clamp(at.y + offset_draw(rng, spec.camera_jitter), -bound, bound);
    p = at;
  }
  return out;
}

std::size_t camera_bound(const SceneSpec& spec) { return 2 * spec.camera_jitter; }

FrameSequence render(const SceneSpec& spec) {
  validate(spec);
  const auto bg = background(spec);
  const auto offsets = camera_offsets(spec);
  const std::size_t h = spec.height;
  const std::size_t w = spec.width;
  const std::size_t c_n = spec.channels;
  const double sprite = on_u8_grid(spec.sprite_intensity);
  const double sprite_alt = on_u8_grid(1.0 - spec.sprite_intensity);
  const auto wrap = [](std::int64_t v, std::size_t n) {
    const auto m = static_cast<std::int64_t>(n);
    return static_cast<std::size_t>(((v % m) + m) % m);
  };

  FrameSequence seq;
  for (std::size_t t = 0; t < spec.frames; ++t) {
    const auto off = offsets[t];
    Image frame(h, w, c_n);
    for (std::size_t y = 0; y < h; ++y) {
      const auto sy = wrap(static_cast<std::int64_t>(y) - off.y, h);
      for (std::size_t x = 0; x < w; ++x) {
        const auto sx = wrap(static_cast<std::int64_t>(x) - off.x, w);
        for (std::size_t c = 0; c < c_n; ++c) frame.at(y, x, c) = bg[(sy * w + sx) * c_n + c];
      }
    }
    if (spec.sprite_size > 0) {
      const auto p = sprite_position(spec, t);
      const auto x0 = static_cast<std::size_t>(p.x + off.x);
      const auto y0 = static_cast<std::size_t>(p.y + off.y);
      for (std::size_t y = y0; y < y0 + spec.sprite_size; ++y) {
        for (std::size_t x = x0; x < x0 + spec.sprite_size; ++x) {
          const bool odd = spec.sprite_checker > 0 &&
                           ((y - y0) / spec.sprite_checker + (x - x0) / spec.sprite_checker) % 2 == 1;
          for (std::size_t c = 0; c < c_n; ++c) frame.at(y, x, c) = odd ? sprite_alt : sprite;
        }
      }
    }
    if (spec.sensor_noise > 0.0) {
      std::mt19937_64 rng((spec.seed ^ kSensorStream) + t);
      for (double& v : frame.values()) {
        v = on_u8_grid(v + spec.sensor_noise * (2.0 * unit_draw(rng) - 1.0));
      }
    }
    seq.push_back(std::move(frame));
  }
  return seq;
}

SceneSpec burst_scene(std::size_t jitter, std::uint64_t seed) {
  SceneSpec spec;
  spec.height = 128;
  spec.width = 128;
  spec.channels = 1;
  spec.frames = 64;
  spec.background = Background::kNoise;
  spec.sprite_size = 24;
  spec.sprite_intensity = 1.0;
  spec.sprite_x = 8;
  spec.sprite_y = 50;
  spec.velocity_x = 4;
  spec.velocity_y = 0;
  spec.motion_window = MotionWindow{20, 40};
  spec.camera_jitter = jitter;
  spec.seed = seed;
  return spec;
}

SceneSpec uniform_scene(std::size_t frames) {
  SceneSpec spec;
  spec.height = 128;
  spec.width = 128;
  spec.frames = frames;
  spec.background = Background::kConstant;
  spec.background_level = 0.5;
  spec.sprite_size = 0;
  return spec;
}

SceneSpec static_scene(std::size_t frames, std::uint64_t seed) {
  SceneSpec spec;
  spec.height = 128;
  spec.width = 128;
  spec.frames = frames;
  spec.background = Background::kNoise;
  spec.seed = seed;
  return spec;
}

}  // namespace pmis
