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

#include "pwig/imaging.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <string>

#include "pwig/errors.hpp"

namespace pwig {
namespace {

std::uint8_t to_byte(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

class HeaderReader {
 public:
  explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const auto c = bytes_[pos_];
      if (c == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(c)) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  std::size_t number(const char* what) {
    skip_space_and_comments();
    std::size_t v = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      v = v * 10 + (bytes_[pos_] - '0');
      ++pos_;
      if (++digits > 9) throw ParseError(std::string("netpbm: ") + what + " too large");
    }
    if (digits == 0) {
      throw ParseError(std::string("netpbm: expected ") + what);
    }
    return v;
  }

  std::size_t& pos() { return pos_; }

 private:
  std::span<const std::uint8_t> bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

Image::Image(std::size_t width, std::size_t height, std::size_t channels,
             std::vector<std::uint8_t> pixels)
    : width_(width),
      height_(height),
      channels_(channels),
      pixels_(std::move(pixels)) {
  if (width_ == 0 || height_ == 0) {
    throw ShapeError("image dimensions must be positive");
  }
  if (channels_ != 1 && channels_ != 3) {
    throw ShapeError("image must have 1 or 3 channels, got " +
                     std::to_string(channels_));
  }
  if (pixels_.size() != width_ * height_ * channels_) {
    throw ShapeError("image needs " +
                     std::to_string(width_ * height_ * channels_) +
                     " samples, got " + std::to_string(pixels_.size()));
  }
}

Image read_netpbm(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P') {
    throw ParseError("netpbm: bad magic number");
  }
  std::size_t channels = 0;
  if (bytes[1] == '5') {
    channels = 1;
  } else if (bytes[1] == '6') {
    channels = 3;
  } else {
    throw ParseError(std::string("netpbm: unsupported format P") +
                     static_cast<char>(bytes[1]) +
                     " (only binary P5 and P6 are read)");
  }
  HeaderReader header(bytes.subspan(2));
  const std::size_t width = header.number("width");
  const std::size_t height = header.number("height");
  const std::size_t maxval = header.number("maxval");
  if (maxval != 255) {
    throw ParseError("netpbm: maxval " + std::to_string(maxval) +
                     " unsupported (only 255)");
  }
  std::size_t pos = header.pos() + 2;
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw ParseError("netpbm: missing whitespace after maxval");
  }
  ++pos;
  const std::size_t need = width * height * channels;
  if (bytes.size() - pos < need) {
    throw ParseError("netpbm: truncated raster (need " + std::to_string(need) +
                     " bytes, have " + std::to_string(bytes.size() - pos) + ")");
  }
  std::vector<std::uint8_t> pixels(bytes.begin() + pos,
                                   bytes.begin() + pos + need);
  try {
    return Image(width, height, channels, std::move(pixels));
  } catch (const ShapeError& e) {
    throw ParseError(std::string("netpbm: ") + e.what());
  }
}

std::vector<std::uint8_t> write_netpbm(const Image& image) {
  const std::string header = std::string(image.channels() == 1 ? "P5" : "P6") +
                             "\n" + std::to_string(image.width()) + " " +
                             std::to_string(image.height()) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), image.pixels().begin(), image.pixels().end());
  return out;
}

Image read_netpbm_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return read_netpbm(bytes);
}

void write_netpbm_file(const std::string& path, const Image& image) {
  const std::vector<std::uint8_t> bytes = write_netpbm(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("write failed for " + path);
}

Tensor to_working(const Image& image) {
  const std::size_t c = image.channels(), h = image.height(), w = image.width();
  std::vector<double> v(c * h * w);
  for (std::size_t ch = 0; ch < c; ++ch) {
    for (std::size_t y = 0; y < h; ++y) {
      for (std::size_t x = 0; x < w; ++x) {
        v[(ch * h + y) * w + x] = image.at(x, y, ch) / 255.0;
      }
    }
  }
  return Tensor({c, h, w}, std::move(v));
}

Tensor resize_bilinear(const Tensor& chw, std::size_t height,
                       std::size_t width) {
  if (chw.rank() != 3) {
    throw ShapeError("resize expects (c, h, w), got " +
                     shape_string(chw.shape()));
  }
  if (height == 0 || width == 0) {
    throw ShapeError("resize target must be positive");
  }
  const std::size_t c = chw.shape()[0], in_h = chw.shape()[1],
                    in_w = chw.shape()[2];
  if (in_h == height && in_w == width) return chw;

  struct Tap {
    std::size_t lo, hi;
    double frac;
  };
  auto taps = [](std::size_t in, std::size_t out) {
    std::vector<Tap> t(out);
    const double scale = static_cast<double>(in) / static_cast<double>(out);
    for (std::size_t o = 0; o < out; ++o) {
      double src = (static_cast<double>(o) + 0.5) * scale - 0.5;
      src = std::clamp(src, 0.0, static_cast<double>(in - 1));
      const std::size_t lo = static_cast<std::size_t>(std::floor(src));
      const std::size_t hi = std::min(lo + 1, in - 1);
      t[o] = {lo, hi, src - static_cast<double>(lo)};
    }
    return t;
  };
  const std::vector<Tap> ty = taps(in_h, height), tx = taps(in_w, width);
  std::vector<double> out(c * height * width);
  for (std::size_t ch = 0; ch < c; ++ch) {
    const double* plane = chw.data().data() + ch * in_h * in_w;
    for (std::size_t y = 0; y < height; ++y) {
      const Tap& a = ty[y];
      for (std::size_t x = 0; x < width; ++x) {
        const Tap& b = tx[x];
        const double top = plane[a.lo * in_w + b.lo] * (1.0 - b.frac) +
                           plane[a.lo * in_w + b.hi] * b.frac;
        const double bottom = plane[a.hi * in_w + b.lo] * (1.0 - b.frac) +
                              plane[a.hi * in_w + b.hi] * b.frac;
        out[(ch * height + y) * width + x] =
            top * (1.0 - a.frac) + bottom * a.frac;
      }
    }
  }
  return Tensor({c, height, width}, std::move(out));
}

Image resize_image(const Image& image, std::size_t height, std::size_t width) {
  if (image.height() == height && image.width() == width) return image;
  const Tensor t = resize_bilinear(to_working(image), height, width);
  const std::size_t c = image.channels();
  std::vector<std::uint8_t> px(width * height * c);
  for (std::size_t ch = 0; ch < c; ++ch) {
    for (std::size_t y = 0; y < height; ++y) {
      for (std::size_t x = 0; x < width; ++x) {
        px[(y * width + x) * c + ch] =
            to_byte(t[(ch * height + y) * width + x] * 255.0);
      }
    }
  }
  return Image(width, height, c, std::move(px));
}

Tensor prepare_input(const Image& image, std::size_t height,
                     std::size_t width) {
  const Tensor resized = resize_bilinear(to_working(image), height, width);
  const std::size_t plane = height * width;
  std::vector<double> out(3 * plane);
  for (std::size_t ch = 0; ch < 3; ++ch) {
    const std::size_t src = image.channels() == 1 ? 0 : ch;
    for (std::size_t i = 0; i < plane; ++i) {
      out[ch * plane + i] =
          (resized[src * plane + i] - kChannelMean[ch]) / kChannelStd[ch];
    }
  }
  return Tensor({3, height, width}, std::move(out));
}

double percentile(std::span<const double> values, double p) {
  if (values.empty()) throw PreconditionError("percentile of an empty list");
  if (!(p >= 0.0 && p <= 100.0)) {
    throw PreconditionError("percentile must lie in [0, 100]");
  }
  if (!all_finite(values)) {
    throw NumericError("percentile of non-finite values");
  }
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double rank = p / 100.0 * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(rank));
  const std::size_t hi = static_cast<std::size_t>(std::ceil(rank));
  const double frac = rank - static_cast<double>(lo);
  if (lo == hi) return sorted[lo];
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

Tensor aggregate_channels(const Tensor& scores) {
  if (scores.rank() != 3 || scores.shape()[0] != 3) {
    throw ShapeError("aggregate_channels expects (3, h, w), got " +
                     shape_string(scores.shape()));
  }
  const std::size_t h = scores.shape()[1], w = scores.shape()[2];
  const std::size_t plane = h * w;
  std::vector<double> out(plane, 0.0);
  for (std::size_t ch = 0; ch < 3; ++ch) {
    for (std::size_t i = 0; i < plane; ++i) {
      out[i] += std::abs(scores[ch * plane + i]);
    }
  }
  return Tensor({h, w}, std::move(out));
}

void validate_render_config(const RenderConfig& config) {
  if (!(config.clip_low >= 0.0 && config.clip_low < config.clip_high &&
        config.clip_high <= 100.0)) {
    throw PreconditionError("render config needs 0 <= clip_low < clip_high <= 100");
  }
  if (!(config.opacity >= 0.0 && config.opacity <= 1.0)) {
    throw PreconditionError("overlay opacity must lie in [0, 1]");
  }
}

ClipResult clip_band(const Tensor& scores, const RenderConfig& config) {
  validate_render_config(config);
  const double lo = percentile(scores.data(), config.clip_low);
  const double hi = percentile(scores.data(), config.clip_high);
  ClipResult r{Tensor::zeros(scores.shape()), lo, hi, false};
  if (hi == lo || !(hi > 0.0)) {
    r.degenerate = true;
    return r;
  }
  std::vector<double> out(scores.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double v = scores[i];
    out[i] = v < lo ? 0.0 : std::min(v, hi) / hi;
  }
  r.mask = Tensor(scores.shape(), std::move(out));
  return r;
}

Image overlay(const Image& base, const Tensor& mask,
              const RenderConfig& config) {
  validate_render_config(config);
  if (mask.rank() != 2 || mask.shape()[0] != base.height() ||
      mask.shape()[1] != base.width()) {
    throw ShapeError("overlay mask " + shape_string(mask.shape()) +
                     " does not match image " + std::to_string(base.height()) +
                     "x" + std::to_string(base.width()));
  }
  const std::size_t w = base.width(), h = base.height();
  std::vector<std::uint8_t> px(w * h * 3);
  for (std::size_t y = 0; y < h; ++y) {
    for (std::size_t x = 0; x < w; ++x) {
      const double t = config.opacity * mask[y * w + x];
      for (std::size_t ch = 0; ch < 3; ++ch) {
        const std::uint8_t b = base.at(x, y, base.channels() == 1 ? 0 : ch);
        std::uint8_t v = b;
        if (t != 0.0) v = to_byte((1.0 - t) * b + t * config.color[ch]);
        px[(y * w + x) * 3 + ch] = v;
      }
    }
  }
  return Image(w, h, 3, std::move(px));
}

Image mask_image(const Tensor& mask) {
  if (mask.rank() != 2) {
    throw ShapeError("mask must be (h, w), got " + shape_string(mask.shape()));
  }
  std::vector<std::uint8_t> px(mask.size());
  for (std::size_t i = 0; i < px.size(); ++i) px[i] = to_byte(mask[i] * 255.0);
  return Image(mask.shape()[1], mask.shape()[0], 1, std::move(px));
}

}  // namespace pwig
