#include "pmis/patch_embed.hpp"

#include <algorithm>
#include <string>

#include "pmis/error.hpp"

namespace pmis {

PatchGrid tile_grid(std::size_t height, std::size_t width, std::size_t channels,
                    std::size_t patch_size) {
  if (patch_size == 0) throw ConfigError("patch size must be at least 1");
  if (channels == 0) throw ConfigError("frames need at least one channel");
  if (patch_size > std::min(height, width)) {
    throw ConfigError("patch size " + std::to_string(patch_size) + " exceeds frame size " +
                      std::to_string(height) + "x" + std::to_string(width));
  }
  return PatchGrid{height, width, channels, patch_size, height / patch_size, width / patch_size};
}

PatchGrid make_grid(std::size_t height, std::size_t width, std::size_t channels,
                    std::size_t patch_size) {
  auto grid = tile_grid(height, width, channels, patch_size);
  if (grid.count() <= 2 * grid.dim()) {
    throw ConfigError("frame too small for patch size " + std::to_string(patch_size) + ": " +
                      std::to_string(grid.count()) + " patches but the joint dimension is " +
                      std::to_string(2 * grid.dim()) +
                      "; increase the resolution or decrease the patch size");
  }
  return grid;
}

void flatten_patch(const Image& frame, const PatchGrid& grid, std::size_t patch_row,
                   std::size_t patch_col, double* out) {
  const std::size_t r = grid.patch_size;
  const std::size_t c_n = grid.channels;
  const auto vals = frame.values();
  const std::size_t run = r * c_n;  // one patch row is contiguous in memory
  for (std::size_t dy = 0; dy < r; ++dy) {
    const std::size_t y = patch_row * r + dy;
    const std::size_t start = (y * frame.width() + patch_col * r) * c_n;
    std::copy_n(vals.begin() + static_cast<std::ptrdiff_t>(start), run, out + dy * run);
  }
}

PatchMatrix embed_pair(const Image& prev, const Image& curr, const PatchGrid& grid) {
  auto matches = [&grid](const Image& f) {
    return f.height() == grid.frame_height && f.width() == grid.frame_width &&
           f.channels() == grid.channels;
  };
  if (!matches(prev) || !matches(curr)) {
    throw ConfigError("frame shape does not match the patch grid");
  }
  const std::size_t d = grid.dim();
  PatchMatrix out{Eigen::MatrixXd(2 * d, grid.count()), grid};
  for (std::size_t pr = 0; pr < grid.rows; ++pr) {
    for (std::size_t pc = 0; pc < grid.cols; ++pc) {
      const auto j = static_cast<Eigen::Index>(pr * grid.cols + pc);
      double* column = out.data.col(j).data();
      flatten_patch(prev, grid, pr, pc, column);
      flatten_patch(curr, grid, pr, pc, column + d);
    }
  }
  return out;
}

}  // namespace pmis
