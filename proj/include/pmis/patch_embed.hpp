#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "pmis/image.hpp"

namespace pmis {

/// Non-overlapping r x r tiling of an H x W x C frame. Pixels past the last
/// whole patch on the right and bottom edges are ignored.
struct PatchGrid {
  std::size_t frame_height = 0;
  std::size_t frame_width = 0;
  std::size_t channels = 0;
  std::size_t patch_size = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;

  // N, the number of patches (samples).
  std::size_t count() const { return rows * cols; }
  // d = r^2 * C, the per-frame embedding dimension.
  std::size_t dim() const { return patch_size * patch_size * channels; }

  friend bool operator==(const PatchGrid&, const PatchGrid&) = default;
};

// Geometry only. Throws ConfigError for r == 0 or r > min(H, W).
PatchGrid tile_grid(std::size_t height, std::size_t width, std::size_t channels,
                    std::size_t patch_size);

// tile_grid plus the N > 2d requirement for a full-rank 2d x 2d covariance.
PatchGrid make_grid(std::size_t height, std::size_t width, std::size_t channels,
                    std::size_t patch_size);

/// 2d x N joint sample matrix. Column j stacks patch j of the previous frame
/// (rows 0..d-1) over patch j of the current frame (rows d..2d-1). Patches
/// are visited row-major over the grid; inside a patch the order is row,
/// column, channel (channels innermost).
struct PatchMatrix {
  Eigen::MatrixXd data;
  PatchGrid grid;
};

// Writes the d-vector of patch (patch_row, patch_col) into `out`.
void flatten_patch(const Image& frame, const PatchGrid& grid, std::size_t patch_row,
                   std::size_t patch_col, double* out);

PatchMatrix embed_pair(const Image& prev, const Image& curr, const PatchGrid& grid);

}  // namespace pmis
