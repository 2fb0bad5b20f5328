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

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pwig/tensor.hpp"

namespace pwig {

/// 8-bit image in storage form: row-major, channels interleaved.
class Image {
 public:
  // Throws ShapeError for zero dimensions, channels other than 1 or 3, or a
  // pixel buffer of the wrong length.
  Image(std::size_t width, std::size_t height, std::size_t channels,
        std::vector<std::uint8_t> pixels);

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  std::size_t channels() const noexcept { return channels_; }
  std::span<const std::uint8_t> pixels() const noexcept { return pixels_; }
  std::uint8_t at(std::size_t x, std::size_t y, std::size_t c = 0) const {
    return pixels_[(y * width_ + x) * channels_ + c];
  }

  friend bool operator==(const Image&, const Image&) = default;

 private:
  std::size_t width_;
  std::size_t height_;
  std::size_t channels_;
  std::vector<std::uint8_t> pixels_;
};

// Binary P5/P6 with maxval 255. Comments are allowed in the header.
Image read_netpbm(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> write_netpbm(const Image& image);

Image read_netpbm_file(const std::string& path);
void write_netpbm_file(const std::string& path, const Image& image);

// Working form: (C, H, W) tensor of values in [0, 1].
Tensor to_working(const Image& image);

// Bilinear resize of a (C, H, W) tensor, half-pixel centers
// (src = (dst + 0.5) * in / out - 0.5, clamped to the edge). Same size is
// the identity.
Tensor resize_bilinear(const Tensor& chw, std::size_t height, std::size_t width);

// Storage-form resize (bilinear on working values, then rounding).
Image resize_image(const Image& image, std::size_t height, std::size_t width);

inline constexpr std::array<double, 3> kChannelMean{0.485, 0.456, 0.406};
inline constexpr std::array<double, 3> kChannelStd{0.229, 0.224, 0.225};

// Resize to height x width, replicate grayscale to 3 channels and apply
// (v - mean_c) / std_c. Output shape (3, height, width).
Tensor prepare_input(const Image& image, std::size_t height = 224,
                     std::size_t width = 224);

// Inclusive percentile: sort, rank r = p/100 * (n - 1), interpolate
// linearly between floor(r) and ceil(r).
double percentile(std::span<const double> values, double p);

// (3, H, W) -> (H, W): sum over channels of |score|.
Tensor aggregate_channels(const Tensor& scores);

struct RenderConfig {
  double clip_low = 60.0;
  double clip_high = 95.0;
  std::array<std::uint8_t, 3> color{0, 255, 0};
  double opacity = 0.6;
};

void validate_render_config(const RenderConfig& config);

struct ClipResult {
  Tensor mask;  // (H, W), values in [0, 1]
  double low = 0.0;
  double high = 0.0;
  bool degenerate = false;  // high == low; mask is all zero
};

// Band clip: scores below the low percentile become 0, scores above the high
// percentile become the high percentile, then everything is divided by it.
ClipResult clip_band(const Tensor& scores, const RenderConfig& config);

// out = (1 - a m) base + a m color per channel, a = opacity, rounded half
// away from zero. Grayscale bases are replicated to RGB first.
Image overlay(const Image& base, const Tensor& mask, const RenderConfig& config);

// Mask in [0, 1] to a P5-ready grayscale image (value * 255, rounded).
Image mask_image(const Tensor& mask);

}  // namespace pwig
