// Copyright 2026 The pwig Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <pwig/errors.hpp>
#include <pwig/imaging.hpp>
#include <pwig/rng.hpp>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace pwig {
namespace {

using testing::random_tensor;

std::vector<std::uint8_t> bytes(std::string_view header,
                                std::initializer_list<int> raster) {
  std::vector<std::uint8_t> out(header.begin(), header.end());
  for (int v : raster) out.push_back(static_cast<std::uint8_t>(v));
  return out;
}

Image random_image(std::uint64_t seed, std::size_t w, std::size_t h,
                   std::size_t c) {
  Rng rng(seed);
  std::vector<std::uint8_t> px(w * h * c);
  for (auto& p : px) p = static_cast<std::uint8_t>(rng.below(256));
  return Image(w, h, c, std::move(px));
}

// Half-pixel-center bilinear sample of one channel, clamped at the border.
double bilinear_reference(const Tensor& t, std::size_t c, std::size_t oy,
                          std::size_t ox, std::size_t oh, std::size_t ow) {
  const std::size_t h = t.shape()[1], w = t.shape()[2];
  const auto coord = [](std::size_t o, std::size_t in, std::size_t out) {
    double s = (o + 0.5) * double(in) / double(out) - 0.5;
    return std::clamp(s, 0.0, double(in - 1));
  };
  const double sy = coord(oy, h, oh), sx = coord(ox, w, ow);
  const std::size_t y0 = std::size_t(sy), x0 = std::size_t(sx);
  const std::size_t y1 = std::min(y0 + 1, h - 1), x1 = std::min(x0 + 1, w - 1);
  const double fy = sy - y0, fx = sx - x0;
  const auto at = [&](std::size_t y, std::size_t x) { return t[(c * h + y) * w + x]; };
  return (1 - fy) * ((1 - fx) * at(y0, x0) + fx * at(y0, x1)) +
         fy * ((1 - fx) * at(y1, x0) + fx * at(y1, x1));
}

TEST(Netpbm, ReadsGrayExample) {
  const Image img = read_netpbm(bytes("P5\n2 2\n255\n", {0x00, 0x40, 0x80, 0xFF}));
  EXPECT_EQ(img.width(), 2u);
  EXPECT_EQ(img.height(), 2u);
  EXPECT_EQ(img.channels(), 1u);
  EXPECT_EQ(std::vector<std::uint8_t>(img.pixels().begin(), img.pixels().end()),
            (std::vector<std::uint8_t>{0, 64, 128, 255}));
}

TEST(Netpbm, ReadsRgbPixel) {
  const Image img = read_netpbm(bytes("P6\n1 1\n255\n", {0xFF, 0x00, 0x00}));
  EXPECT_EQ(img.channels(), 3u);
  EXPECT_EQ(img.at(0, 0, 0), 255);
  EXPECT_EQ(img.at(0, 0, 1), 0);
  EXPECT_EQ(img.at(0, 0, 2), 0);
}

TEST(Netpbm, SkipsComments) {
  const Image img =
      read_netpbm(bytes("P5\n# made by hand\n2 1 # width height\n255\n", {7, 9}));
  EXPECT_EQ(img.at(1, 0), 9);
}

TEST(Netpbm, RasterMayStartWithWhitespaceByte) {
  // Exactly one whitespace byte follows maxval; 0x0A here is a sample.
  const Image img = read_netpbm(bytes("P5\n2 1\n255\n", {0x0A, 0x20}));
  EXPECT_EQ(img.at(0, 0), 0x0A);
  EXPECT_EQ(img.at(1, 0), 0x20);
}

TEST(Netpbm, RejectsUnsupported) {
  EXPECT_THROW(read_netpbm(bytes("P3\n1 1\n255\n0 0 0\n", {})), ParseError);
  EXPECT_THROW(read_netpbm(bytes("P5\n2 2\n255\n", {1, 2, 3})), ParseError);
  EXPECT_THROW(read_netpbm(bytes("P5\n1 1\n65535\n", {0, 0})), ParseError);
  EXPECT_THROW(read_netpbm(bytes("P5\n0 1\n255\n", {})), ParseError);
  EXPECT_THROW(read_netpbm(bytes("", {})), ParseError);
}

TEST(Netpbm, WriteHeaderAndRoundTrip) {
  const Image rgb(3, 1, 3, {1, 2, 3, 4, 5, 6, 7, 8, 9});
  const std::vector<std::uint8_t> out = write_netpbm(rgb);
  EXPECT_EQ(std::string(out.begin(), out.begin() + 11), "P6\n3 1\n255\n");
  EXPECT_TRUE(read_netpbm(out) == rgb);
  const auto gray = bytes("P5\n2 2\n255\n", {0x00, 0x40, 0x80, 0xFF});
  EXPECT_EQ(write_netpbm(read_netpbm(gray)), gray);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const Image img = random_image(s, 1 + s, 7, s % 2 ? 3 : 1);
    EXPECT_TRUE(read_netpbm(write_netpbm(img)) == img);
  }
}

TEST(Image, RejectsEmptyOrInconsistent) {
  EXPECT_THROW(Image(0, 0, 1, {}), ShapeError);
  EXPECT_THROW(Image(2, 2, 1, {1, 2, 3}), ShapeError);
  EXPECT_THROW(Image(1, 1, 2, {1, 2}), ShapeError);
}

TEST(PrepareInput, ConstantGrayNormalizes) {
  const Image gray(224, 224, 1, std::vector<std::uint8_t>(224 * 224, 128));
  const Tensor t = prepare_input(gray);
  EXPECT_EQ(t.shape(), (Shape{3, 224, 224}));
  const double v = 128.0 / 255.0;
  EXPECT_NEAR(t[0], (v - 0.485) / 0.229, 1e-12);
  EXPECT_NEAR(t[224 * 224], (v - 0.456) / 0.224, 1e-12);
  EXPECT_NEAR(t[2 * 224 * 224 + 5], (v - 0.406) / 0.225, 1e-12);
}

TEST(PrepareInput, HalfIntensityChannelZero) {
  // A 2x1 image [0, 255] resized to 1x1 samples the exact midpoint 0.5.
  const Image img(2, 1, 1, {0, 255});
  const Tensor t = prepare_input(img, 1, 1);
  EXPECT_NEAR(t[0], (0.5 - 0.485) / 0.229, 1e-12);
  EXPECT_NEAR(t[0], 0.0655, 1e-4);
}

TEST(PrepareInput, SameSizeSkipsInterpolation) {
  const Image img = random_image(3, 224, 224, 1);
  const Tensor working = to_working(img);
  EXPECT_TRUE(bitwise_equal(resize_bilinear(working, 224, 224), working));
  const Tensor t = prepare_input(img);
  for (std::size_t i : {0u, 777u, 50175u}) {
    EXPECT_NEAR(t[i], (img.pixels()[i] / 255.0 - 0.485) / 0.229, 1e-12);
  }
}

TEST(PrepareInput, AlwaysThreeBy224) {
  for (const Image& img : {random_image(1, 17, 9, 1), random_image(2, 300, 260, 3)}) {
    EXPECT_EQ(prepare_input(img).shape(), (Shape{3, 224, 224}));
  }
  const Image rgb(1, 1, 3, {255, 0, 51});
  const Tensor t = prepare_input(rgb, 1, 1);
  EXPECT_NEAR(t[0], (1.0 - 0.485) / 0.229, 1e-12);
  EXPECT_NEAR(t[1], (0.0 - 0.456) / 0.224, 1e-12);
  EXPECT_NEAR(t[2], (0.2 - 0.406) / 0.225, 1e-12);
}

TEST(ResizeBilinear, MatchesReference) {
  const Tensor src = random_tensor(4, {2, 7, 5}, 0, 1);
  for (auto [oh, ow] : {std::pair<std::size_t, std::size_t>{3, 11}, {14, 10}, {1, 1}}) {
    const Tensor out = resize_bilinear(src, oh, ow);
    ASSERT_EQ(out.shape(), (Shape{2, oh, ow}));
    for (std::size_t c = 0; c < 2; ++c)
      for (std::size_t y = 0; y < oh; ++y)
        for (std::size_t x = 0; x < ow; ++x)
          EXPECT_NEAR(out[(c * oh + y) * ow + x],
                      bilinear_reference(src, c, y, x, oh, ow), 1e-9);
  }
}

TEST(Percentile, Examples) {
  const std::vector<double> v{1, 2, 3, 4, 5};
  EXPECT_EQ(percentile(v, 50), 3.0);
  EXPECT_DOUBLE_EQ(percentile(v, 95), 4.8);
  for (double p : {0.0, 37.0, 100.0}) EXPECT_EQ(percentile(std::vector<double>{7}, p), 7.0);
  EXPECT_THROW(percentile(std::vector<double>{}, 50), PreconditionError);
  EXPECT_THROW(percentile(v, 101), PreconditionError);
}

TEST(Percentile, MonotoneAndPermutationInvariant) {
  Rng rng(5);
  std::vector<double> v(101);
  for (double& e : v) e = rng.uniform(-3, 3);
  std::vector<double> shuffled = v;
  rng.shuffle(std::span<double>(shuffled));
  double prev = -INFINITY;
  for (int p = 0; p <= 100; ++p) {
    const double q = percentile(v, p);
    EXPECT_GE(q, prev);
    EXPECT_EQ(q, percentile(shuffled, p));
    prev = q;
  }
}

TEST(AggregateChannels, SumOfAbsoluteValues) {
  std::vector<double> v(3 * 2 * 2, 0.0);
  v[0] = 1.0;
  v[4] = -2.0;
  v[8] = 0.5;
  const Tensor agg = aggregate_channels(Tensor({3, 2, 2}, v));
  EXPECT_EQ(agg.shape(), (Shape{2, 2}));
  EXPECT_EQ(agg[0], 3.5);
  EXPECT_EQ(agg[1], 0.0);
  const Tensor zero = aggregate_channels(Tensor::zeros({3, 4, 4}));
  for (double e : zero.data()) EXPECT_EQ(e, 0.0);
  EXPECT_THROW(aggregate_channels(Tensor::zeros({2, 4, 4})), ShapeError);
  EXPECT_THROW(aggregate_channels(Tensor::zeros({3, 4})), ShapeError);
}

TEST(AggregateChannels, PreservesDominantPixel) {
  std::vector<double> v = random_tensor(6, {3, 5, 5}, -0.1, 0.1).values();
  v[25 + 13] = -4.0;  // channel 1, pixel 13
  const Tensor agg = aggregate_channels(Tensor({3, 5, 5}, v));
  EXPECT_EQ(std::max_element(agg.data().begin(), agg.data().end()) - agg.data().begin(),
            13);
}

TEST(ClipBand, TenValueExample) {
  std::vector<double> v(10);
  for (int i = 0; i < 10; ++i) v[i] = i;
  const ClipResult r = clip_band(Tensor({2, 5}, v), RenderConfig{});
  EXPECT_NEAR(r.low, 5.4, 1e-12);
  EXPECT_NEAR(r.high, 8.55, 1e-12);
  EXPECT_FALSE(r.degenerate);
  const std::vector<double> want{0, 0, 0, 0, 0, 0, 6 / 8.55, 7 / 8.55, 8 / 8.55, 1.0};
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(r.mask[i], want[i], 1e-12) << i;
  EXPECT_EQ(r.mask[9], 1.0);
}

TEST(ClipBand, ConstantMapIsDegenerate) {
  const ClipResult r = clip_band(Tensor::filled({4, 4}, 2.0), RenderConfig{});
  EXPECT_TRUE(r.degenerate);
  for (double e : r.mask.data()) EXPECT_EQ(e, 0.0);
}

TEST(ClipBand, FullBandIsMaxNormalization) {
  const Tensor s = random_tensor(7, {6, 6}, 0.1, 5.0);
  RenderConfig c;
  c.clip_low = 0;
  c.clip_high = 100;
  const ClipResult r = clip_band(s, c);
  const double mx = *std::max_element(s.data().begin(), s.data().end());
  for (std::size_t i = 0; i < s.size(); ++i) EXPECT_EQ(r.mask[i], s[i] / mx);
}

TEST(ClipBand, RangeAndZeroSet) {
  Rng rng(8);
  for (int t = 0; t < 20; ++t) {
    const Tensor s = random_tensor(rng, {9, 7}, 0, 1);
    const ClipResult r = clip_band(s, RenderConfig{});
    for (std::size_t i = 0; i < s.size(); ++i) {
      EXPECT_GE(r.mask[i], 0.0);
      EXPECT_LE(r.mask[i], 1.0);
      EXPECT_EQ(r.mask[i] == 0.0, s[i] < r.low);
    }
  }
}

TEST(RenderConfig, Validation) {
  RenderConfig c;
  EXPECT_NO_THROW(validate_render_config(c));
  c.clip_low = 95;
  EXPECT_THROW(validate_render_config(c), PreconditionError);
  c = RenderConfig{};
  c.clip_high = 101;
  EXPECT_THROW(validate_render_config(c), PreconditionError);
  c = RenderConfig{};
  c.opacity = 1.5;
  EXPECT_THROW(validate_render_config(c), PreconditionError);
}

TEST(Overlay, ZeroMaskReplicatesBase) {
  const Image base = random_image(9, 6, 4, 1);
  const Image out = overlay(base, Tensor::zeros({4, 6}), RenderConfig{});
  EXPECT_EQ(out.channels(), 3u);
  for (std::size_t y = 0; y < 4; ++y)
    for (std::size_t x = 0; x < 6; ++x)
      for (std::size_t c = 0; c < 3; ++c) EXPECT_EQ(out.at(x, y, c), base.at(x, y));
}

TEST(Overlay, FullMaskOnBlackIsGreen) {
  RenderConfig c;
  c.opacity = 1.0;
  const Image out = overlay(Image(1, 1, 1, {0}), Tensor::filled({1, 1}, 1.0), c);
  EXPECT_EQ(out.at(0, 0, 0), 0);
  EXPECT_EQ(out.at(0, 0, 1), 255);
  EXPECT_EQ(out.at(0, 0, 2), 0);
}

TEST(Overlay, BlendRoundsHalfAwayFromZero) {
  const Image out = overlay(Image(1, 1, 1, {100}), Tensor::filled({1, 1}, 0.5),
                            RenderConfig{});
  EXPECT_EQ(out.at(0, 0, 0), 70);
  EXPECT_EQ(out.at(0, 0, 1), 147);
  EXPECT_EQ(out.at(0, 0, 2), 70);
}

TEST(Overlay, ZeroOpacityIsBase) {
  RenderConfig c;
  c.opacity = 0.0;
  const Image base = random_image(10, 5, 5, 3);
  const Tensor mask = random_tensor(11, {5, 5}, 0, 1);
  EXPECT_TRUE(overlay(base, mask, c) == base);
}

TEST(Overlay, DimensionMismatchThrows) {
  EXPECT_THROW(overlay(Image(2, 2, 1, {0, 0, 0, 0}), Tensor::zeros({2, 3}), RenderConfig{}),
               ShapeError);
}

TEST(MaskImage, ScalesTo255) {
  const Image m = mask_image(Tensor({1, 3}, {0.0, 0.5, 1.0}));
  EXPECT_EQ(m.channels(), 1u);
  EXPECT_EQ(m.at(0, 0), 0);
  EXPECT_EQ(m.at(1, 0), 128);
  EXPECT_EQ(m.at(2, 0), 255);
}

}  // namespace
}  // namespace pwig
