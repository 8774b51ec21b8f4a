#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "pmis/image.hpp"

namespace pmis {

enum class Background { kConstant, kGradient, kNoise };

struct MotionWindow {
  std::size_t start = 0;
  std::size_t end = 0;  // inclusive
};

/// Synthetic scene: a square sprite over a static background, optionally
/// shaken by a global integer camera translation each frame.
struct SceneSpec {
  std::size_t height = 64;
  std::size_t width = 64;
  std::size_t channels = 1;
  std::size_t frames = 64;

  Background background = Background::kNoise;
  double background_level = 0.5;  // constant level, or gradient midpoint
  // Noise background: highest wave frequency (cycles per frame) and the
  // weight of independent per-pixel grain mixed into the waves.
  std::size_t noise_max_frequency = 3;
  double noise_grain = 0.25;

  std::size_t sprite_size = 12;  // 0 disables the sprite
  double sprite_intensity = 1.0;
  // Checkerboard of `sprite_intensity` and 1 - intensity with this cell
  // size; 0 draws a solid square.
  std::size_t sprite_checker = 0;
  std::int64_t sprite_x = 8;  // top-left corner before any motion
  std::int64_t sprite_y = 8;
  std::int64_t velocity_x = 1;  // pixels per frame inside the motion window
  std::int64_t velocity_y = 0;
  std::optional<MotionWindow> motion_window;

  // Max camera translation between adjacent frames, per axis. The camera
  // path is a random walk kept within +-2 * camera_jitter of the origin.
  std::size_t camera_jitter = 0;
  // Independent per-frame, per-pixel noise, uniform in [-sensor_noise, sensor_noise].
  double sensor_noise = 0.0;
  std::uint64_t seed = 0;
};

// Throws ConfigError for empty sizes, a window outside [0, T) or a sprite
// that could leave the frame under its trajectory plus the camera bound.
void validate(const SceneSpec& spec);

// Sprite top-left corner at frame t, before camera jitter.
struct Point {
  std::int64_t x = 0;
  std::int64_t y = 0;
};
Point sprite_position(const SceneSpec& spec, std::size_t t);

// Camera path from std::mt19937_64(seed): per frame two outputs (dx, then
// dy) mapped into [-jitter, jitter] are added to the previous offset, which
// is then clamped to [-camera_bound, camera_bound].
std::vector<Point> camera_offsets(const SceneSpec& spec);
std::size_t camera_bound(const SceneSpec& spec);

// Byte-deterministic rendering; every value lies on the u8 grid k / 255.
FrameSequence render(const SceneSpec& spec);

// 128x128 grayscale, T = 64, a 24 px sprite moving 4 px/frame during
// frames [20, 40]. Patch size 4 keeps the r = 7 at 224x224 proportions.
inline constexpr std::size_t kBurstPatchSize = 4;
SceneSpec burst_scene(std::size_t jitter = 0, std::uint64_t seed = 0);
// 128x128 like the burst scene, so the default patch size applies.
// Constant frames: every pair degenerate, scores uniform.
SceneSpec uniform_scene(std::size_t frames = 64);
// Textured but motionless.
SceneSpec static_scene(std::size_t frames = 64, std::uint64_t seed = 0);

}  // namespace pmis
