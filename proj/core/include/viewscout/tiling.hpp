#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace viewscout {

// Row-major, channel-interleaved pixel buffer.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<float> pixels;

  static Image zeros(int width, int height, int channels);
  float at(int row, int col, int channel) const;
  void set(int row, int col, int channel, float value);
  bool operator==(const Image&) const = default;
};

// Packs fixed-size camera images into square texture atlases.
//
// A texture holds n_cam tiles arranged in a grid_side() x grid_side() grid,
// so n_cam must be a perfect square.  Image k lands in texture k / n_cam at
// grid row (k % n_cam) / grid_side() and column (k % n_cam) % grid_side(),
// filling textures in row-major tile order.  The last texture of a batch is
// zero-padded past the occupied tiles.
struct TileLayout {
  int n_cam = 36;
  int tile_width = 224;
  int tile_height = 224;
  int channels = 3;

  // Throws ConfigError unless n_cam is a positive perfect square and the
  // tile dimensions are positive.
  void validate() const;

  int grid_side() const;
  int texture_width() const { return grid_side() * tile_width; }
  int texture_height() const { return grid_side() * tile_height; }
};

struct TileIndex {
  std::size_t texture = 0;
  int grid_row = 0;
  int grid_col = 0;
  bool operator==(const TileIndex&) const = default;
};

// Where image k lands under the layout.
TileIndex tile_index(const TileLayout& layout, std::size_t image_index);

// Textures needed for image_count images.
std::size_t texture_count(const TileLayout& layout, std::size_t image_count);

// Packs the images into textures.  Every image must match the layout's tile
// dimensions and channel count; throws ConfigError otherwise.
std::vector<Image> tile_images(const TileLayout& layout, const std::vector<Image>& images);

// Recovers the first image_count images from textures produced by
// tile_images.  Exact inverse on the occupied region; padding is ignored.
std::vector<Image> untile_images(const TileLayout& layout, const std::vector<Image>& textures,
                                 std::size_t image_count);

}  // namespace viewscout
