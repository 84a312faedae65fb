#include <doctest.h>

#include <cstddef>
#include <vector>

#include "viewscout/errors.hpp"
#include "viewscout/rng.hpp"
#include "viewscout/tiling.hpp"

using namespace viewscout;

namespace {

Image random_image(Rng& rng, int width, int height, int channels) {
  Image img = Image::zeros(width, height, channels);
  for (float& p : img.pixels) p = static_cast<float>(rng.next_double());
  return img;
}

std::vector<Image> random_batch(Rng& rng, std::size_t count, const TileLayout& layout) {
  std::vector<Image> images;
  images.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    images.push_back(random_image(rng, layout.tile_width, layout.tile_height, layout.channels));
  }
  return images;
}

}  // namespace

TEST_CASE("Image indexing is row-major and channel-interleaved") {
  Image img = Image::zeros(4, 3, 2);
  CHECK(img.pixels.size() == 4u * 3u * 2u);
  img.set(2, 1, 1, 0.75f);
  CHECK(img.at(2, 1, 1) == 0.75f);
  CHECK(img.pixels[(2 * 4 + 1) * 2 + 1] == 0.75f);
  CHECK(img.at(0, 0, 0) == 0.0f);
}

TEST_CASE("the default layout matches the 36-camera capture rig") {
  TileLayout layout;
  CHECK_NOTHROW(layout.validate());
  CHECK(layout.grid_side() == 6);
  CHECK(layout.texture_width() == 1344);
  CHECK(layout.texture_height() == 1344);
}

TEST_CASE("layout validation") {
  TileLayout layout;

  SUBCASE("non-square camera counts are rejected") {
    layout.n_cam = 35;
    CHECK_THROWS_AS(layout.validate(), ConfigError);
  }
  SUBCASE("zero cameras are rejected") {
    layout.n_cam = 0;
    CHECK_THROWS_AS(layout.validate(), ConfigError);
  }
  SUBCASE("tile dimensions must be positive") {
    layout.tile_width = 0;
    CHECK_THROWS_AS(layout.validate(), ConfigError);
  }
  SUBCASE("channels must be positive") {
    layout.channels = 0;
    CHECK_THROWS_AS(layout.validate(), ConfigError);
  }
  SUBCASE("single-camera layouts are fine") {
    layout.n_cam = 1;
    CHECK_NOTHROW(layout.validate());
    CHECK(layout.grid_side() == 1);
  }
}

TEST_CASE("tile_index walks textures in row-major tile order") {
  const TileLayout layout;

  CHECK(tile_index(layout, 0) == TileIndex{0, 0, 0});
  CHECK(tile_index(layout, 5) == TileIndex{0, 0, 5});
  CHECK(tile_index(layout, 6) == TileIndex{0, 1, 0});
  CHECK(tile_index(layout, 35) == TileIndex{0, 5, 5});
  CHECK(tile_index(layout, 36) == TileIndex{1, 0, 0});
  CHECK(tile_index(layout, 37) == TileIndex{1, 0, 1});
  CHECK(tile_index(layout, 79) == TileIndex{2, 1, 1});

  TileLayout quad;
  quad.n_cam = 4;
  CHECK(tile_index(quad, 3) == TileIndex{0, 1, 1});
  CHECK(tile_index(quad, 4) == TileIndex{1, 0, 0});
}

TEST_CASE("texture_count rounds up") {
  const TileLayout layout;
  CHECK(texture_count(layout, 0) == 0);
  CHECK(texture_count(layout, 1) == 1);
  CHECK(texture_count(layout, 15) == 1);
  CHECK(texture_count(layout, 36) == 1);
  CHECK(texture_count(layout, 37) == 2);
  CHECK(texture_count(layout, 72) == 2);
  CHECK(texture_count(layout, 73) == 3);
}

TEST_CASE("tiling roundtrips exactly") {
  TileLayout layout;
  layout.n_cam = 9;
  layout.tile_width = 17;
  layout.tile_height = 11;
  layout.channels = 3;
  Rng rng(7);

  SUBCASE("partial texture") {
    const std::vector<Image> images = random_batch(rng, 5, layout);
    const std::vector<Image> textures = tile_images(layout, images);
    REQUIRE(textures.size() == 1);
    CHECK(textures[0].width == layout.texture_width());
    CHECK(textures[0].height == layout.texture_height());
    CHECK(untile_images(layout, textures, 5) == images);
  }

  SUBCASE("several textures") {
    const std::vector<Image> images = random_batch(rng, 21, layout);
    const std::vector<Image> textures = tile_images(layout, images);
    REQUIRE(textures.size() == 3);
    CHECK(untile_images(layout, textures, 21) == images);
  }

  SUBCASE("empty batch") {
    const std::vector<Image> textures = tile_images(layout, {});
    CHECK(textures.empty());
    CHECK(untile_images(layout, {}, 0).empty());
  }

  SUBCASE("single-camera identity") {
    TileLayout solo;
    solo.n_cam = 1;
    solo.tile_width = 8;
    solo.tile_height = 6;
    solo.channels = 2;
    const std::vector<Image> images = random_batch(rng, 3, solo);
    const std::vector<Image> textures = tile_images(solo, images);
    REQUIRE(textures.size() == 3);
    CHECK(textures == images);
    CHECK(untile_images(solo, textures, 3) == images);
  }
}

TEST_CASE("tiles land at their grid offsets and padding stays zero") {
  TileLayout layout;
  layout.n_cam = 4;
  layout.tile_width = 2;
  layout.tile_height = 2;
  layout.channels = 1;

  std::vector<Image> images;
  for (int k = 0; k < 3; ++k) {
    Image img = Image::zeros(2, 2, 1);
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) img.set(r, c, 0, static_cast<float>(k + 1));
    }
    images.push_back(img);
  }

  const std::vector<Image> textures = tile_images(layout, images);
  REQUIRE(textures.size() == 1);
  const Image& tex = textures[0];
  REQUIRE(tex.width == 4);
  REQUIRE(tex.height == 4);

  CHECK(tex.at(0, 0, 0) == 1.0f);
  CHECK(tex.at(1, 1, 0) == 1.0f);
  CHECK(tex.at(0, 2, 0) == 2.0f);
  CHECK(tex.at(1, 3, 0) == 2.0f);
  CHECK(tex.at(2, 0, 0) == 3.0f);
  CHECK(tex.at(3, 1, 0) == 3.0f);
  CHECK(tex.at(2, 2, 0) == 0.0f);
  CHECK(tex.at(3, 3, 0) == 0.0f);
}

TEST_CASE("fuzzed roundtrips across batch sizes") {
  TileLayout layout;
  layout.n_cam = 16;
  layout.tile_width = 7;
  layout.tile_height = 5;
  layout.channels = 2;
  Rng rng(99);

  for (std::size_t count : {1u, 15u, 16u, 17u, 40u, 64u}) {
    CAPTURE(count);
    const std::vector<Image> images = random_batch(rng, count, layout);
    const std::vector<Image> textures = tile_images(layout, images);
    CHECK(textures.size() == texture_count(layout, count));
    CHECK(untile_images(layout, textures, count) == images);
  }
}

TEST_CASE("the capture-rig configuration roundtrips") {
  const TileLayout layout;
  Rng rng(1234);
  const std::vector<Image> images = random_batch(rng, 36, layout);
  const std::vector<Image> textures = tile_images(layout, images);
  REQUIRE(textures.size() == 1);
  CHECK(textures[0].width == 1344);
  CHECK(textures[0].height == 1344);
  CHECK(untile_images(layout, textures, 36) == images);
}

TEST_CASE("tiling rejects mismatched inputs") {
  TileLayout layout;
  layout.n_cam = 4;
  layout.tile_width = 3;
  layout.tile_height = 3;
  layout.channels = 1;
  Rng rng(5);

  SUBCASE("wrong image dimensions") {
    std::vector<Image> images = {random_image(rng, 4, 3, 1)};
    CHECK_THROWS_AS((void)tile_images(layout, images), ConfigError);
  }
  SUBCASE("wrong channel count") {
    std::vector<Image> images = {random_image(rng, 3, 3, 2)};
    CHECK_THROWS_AS((void)tile_images(layout, images), ConfigError);
  }
  SUBCASE("invalid layout") {
    TileLayout bad = layout;
    bad.n_cam = 3;
    std::vector<Image> images = {random_image(rng, 3, 3, 1)};
    CHECK_THROWS_AS((void)tile_images(bad, images), ConfigError);
  }
  SUBCASE("untile with too few textures") {
    const std::vector<Image> textures = tile_images(layout, random_batch(rng, 4, layout));
    CHECK_THROWS_AS((void)untile_images(layout, textures, 5), ConfigError);
  }
  SUBCASE("untile with wrong texture dimensions") {
    std::vector<Image> textures = {random_image(rng, 5, 6, 1)};
    CHECK_THROWS_AS((void)untile_images(layout, textures, 1), ConfigError);
  }
}
