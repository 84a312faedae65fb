#include "viewscout/tiling.hpp"

#include <cmath>
#include <string>

#include "viewscout/errors.hpp"

namespace viewscout {

Image Image::zeros(int width, int height, int channels) {
  Image img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.pixels.assign(static_cast<std::size_t>(width) * height * channels, 0.0f);
  return img;
}

float Image::at(int row, int col, int channel) const {
  return pixels[(static_cast<std::size_t>(row) * width + col) * channels + channel];
}

void Image::set(int row, int col, int channel, float value) {
  pixels[(static_cast<std::size_t>(row) * width + col) * channels + channel] = value;
}

void TileLayout::validate() const {
  if (n_cam <= 0) throw ConfigError("n_cam must be positive");
  const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_cam))));
  if (side * side != n_cam) {
    throw ConfigError("n_cam must be a perfect square, got " + std::to_string(n_cam));
  }
  if (tile_width <= 0 || tile_height <= 0) throw ConfigError("tile dimensions must be positive");
  if (channels <= 0) throw ConfigError("channel count must be positive");
}

int TileLayout::grid_side() const {
  return static_cast<int>(std::lround(std::sqrt(static_cast<double>(n_cam))));
}

TileIndex tile_index(const TileLayout& layout, std::size_t image_index) {
  layout.validate();
  const int side = layout.grid_side();
  const std::size_t local = image_index % static_cast<std::size_t>(layout.n_cam);
  TileIndex idx;
  idx.texture = image_index / static_cast<std::size_t>(layout.n_cam);
  idx.grid_row = static_cast<int>(local) / side;
  idx.grid_col = static_cast<int>(local) % side;
  return idx;
}

std::size_t texture_count(const TileLayout& layout, std::size_t image_count) {
  layout.validate();
  if (image_count == 0) return 0;
  return (image_count + layout.n_cam - 1) / static_cast<std::size_t>(layout.n_cam);
}

std::vector<Image> tile_images(const TileLayout& layout, const std::vector<Image>& images) {
  layout.validate();
  for (std::size_t k = 0; k < images.size(); ++k) {
    const Image& img = images[k];
    if (img.width != layout.tile_width || img.height != layout.tile_height || img.channels != layout.channels) {
      throw ConfigError("image " + std::to_string(k) + " does not match the tile layout");
    }
  }

  std::vector<Image> textures;
  textures.reserve(texture_count(layout, images.size()));
  for (std::size_t t = 0; t < texture_count(layout, images.size()); ++t) {
    textures.push_back(Image::zeros(layout.texture_width(), layout.texture_height(), layout.channels));
  }

  for (std::size_t k = 0; k < images.size(); ++k) {
    const TileIndex idx = tile_index(layout, k);
    Image& texture = textures[idx.texture];
    const int row0 = idx.grid_row * layout.tile_height;
    const int col0 = idx.grid_col * layout.tile_width;
    for (int r = 0; r < layout.tile_height; ++r) {
      for (int c = 0; c < layout.tile_width; ++c) {
        for (int ch = 0; ch < layout.channels; ++ch) {
          texture.set(row0 + r, col0 + c, ch, images[k].at(r, c, ch));
        }
      }
    }
  }
  return textures;
}

std::vector<Image> untile_images(const TileLayout& layout, const std::vector<Image>& textures,
                                 std::size_t image_count) {
  layout.validate();
  if (texture_count(layout, image_count) > textures.size()) {
    throw ConfigError("not enough textures for " + std::to_string(image_count) + " images");
  }
  for (std::size_t t = 0; t < textures.size(); ++t) {
    const Image& texture = textures[t];
    if (texture.width != layout.texture_width() || texture.height != layout.texture_height() ||
        texture.channels != layout.channels) {
      throw ConfigError("texture " + std::to_string(t) + " does not match the layout");
    }
  }

  std::vector<Image> images;
  images.reserve(image_count);
  for (std::size_t k = 0; k < image_count; ++k) {
    const TileIndex idx = tile_index(layout, k);
    const Image& texture = textures[idx.texture];
    const int row0 = idx.grid_row * layout.tile_height;
    const int col0 = idx.grid_col * layout.tile_width;
    Image img = Image::zeros(layout.tile_width, layout.tile_height, layout.channels);
    for (int r = 0; r < layout.tile_height; ++r) {
      for (int c = 0; c < layout.tile_width; ++c) {
        for (int ch = 0; ch < layout.channels; ++ch) {
          img.set(r, c, ch, texture.at(row0 + r, col0 + c, ch));
        }
      }
    }
    images.push_back(std::move(img));
  }
  return images;
}

}  // namespace viewscout
