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

#include "pwig/ops.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pwig/errors.hpp"

namespace pwig::ops {
namespace {

[[noreturn]] void shape_mismatch(const char* op, const std::string& what,
                           const Shape& expected, const Shape& actual) {
  throw ShapeError(std::string(op) + ": " + what + " expected " +
                   shape_string(expected) + ", got " + shape_string(actual));
}

Tensor checked(const char* op, Shape shape, std::vector<double> data) {
  if (!all_finite(data)) {
    throw NumericError(std::string(op) + ": non-finite output value");
  }
  return Tensor(std::move(shape), std::move(data));
}

// Output positions o in [lo, hi) whose input coordinate o*stride + k - pad
// falls inside [0, extent).
struct Span1d {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

Span1d valid_outputs(std::size_t out_extent, std::size_t extent,
                     std::size_t k, std::size_t stride, std::size_t pad) {
  Span1d s;
  // smallest o with o*stride + k >= pad
  if (k < pad) s.lo = (pad - k + stride - 1) / stride;
  // largest o with o*stride + k - pad <= extent - 1
  if (extent + pad < k + 1) return {0, 0};
  const std::size_t top = (extent + pad - k - 1) / stride + 1;
  s.hi = std::min(out_extent, top);
  if (s.hi < s.lo) s.hi = s.lo;
  return s;
}

}  // namespace

Shape dense_shape(const Shape& input, const Shape& weights,
                  const Shape& bias) {
  if (weights.size() != 2) {
    throw ShapeError("dense: weights must be rank 2, got " +
                     shape_string(weights));
  }
  if (input.size() != 1 || input[0] != weights[1]) {
    shape_mismatch("dense", "input", {weights[1]}, input);
  }
  if (bias.size() != 1 || bias[0] != weights[0]) {
    shape_mismatch("dense", "bias", {weights[0]}, bias);
  }
  return {weights[0]};
}

Shape conv2d_shape(const Shape& input, const Shape& kernels, const Shape& bias,
                   std::size_t stride, std::size_t padding) {
  if (kernels.size() != 4) {
    throw ShapeError("conv2d: kernels must be rank 4 (out, in, kh, kw), got " +
                     shape_string(kernels));
  }
  if (stride == 0) throw ShapeError("conv2d: stride must be positive");
  if (input.size() != 3 || input[0] != kernels[1]) {
    throw ShapeError("conv2d: input expected (" + std::to_string(kernels[1]) +
                     ", h, w), got " + shape_string(input));
  }
  if (bias.size() != 1 || bias[0] != kernels[0]) {
    shape_mismatch("conv2d", "bias", {kernels[0]}, bias);
  }
  const std::size_t ph = input[1] + 2 * padding;
  const std::size_t pw = input[2] + 2 * padding;
  if (ph < kernels[2] || pw < kernels[3]) {
    throw ShapeError("conv2d: kernel " + shape_string(kernels) +
                     " larger than padded input " + shape_string(input));
  }
  return {kernels[0], (ph - kernels[2]) / stride + 1,
          (pw - kernels[3]) / stride + 1};
}

Shape maxpool2d_shape(const Shape& input, std::size_t size,
                      std::size_t stride) {
  if (size == 0 || stride == 0) {
    throw ShapeError("maxpool2d: size and stride must be positive");
  }
  if (input.size() != 3) {
    throw ShapeError("maxpool2d: input must be rank 3 (c, h, w), got " +
                     shape_string(input));
  }
  if (input[1] < size || input[2] < size) {
    throw ShapeError("maxpool2d: window " + std::to_string(size) +
                     " larger than input " + shape_string(input));
  }
  return {input[0], (input[1] - size) / stride + 1,
          (input[2] - size) / stride + 1};
}

Tensor dense(const Tensor& x, const Tensor& weights, const Tensor& bias) {
  Shape out_shape = dense_shape(x.shape(), weights.shape(), bias.shape());
  const std::size_t rows = weights.shape()[0];
  const std::size_t cols = weights.shape()[1];
  const double* w = weights.data().data();
  const double* in = x.data().data();
  std::vector<double> out(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = w + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * in[c];
    out[r] = acc + bias[r];
  }
  return checked("dense", std::move(out_shape), std::move(out));
}

Tensor conv2d(const Tensor& x, const Tensor& kernels, const Tensor& bias,
              std::size_t stride, std::size_t padding) {
  Shape out_shape =
      conv2d_shape(x.shape(), kernels.shape(), bias.shape(), stride, padding);
  const std::size_t in_c = x.shape()[0], in_h = x.shape()[1],
                    in_w = x.shape()[2];
  const std::size_t out_c = out_shape[0], out_h = out_shape[1],
                    out_w = out_shape[2];
  const std::size_t kh = kernels.shape()[2], kw = kernels.shape()[3];
  const double* in = x.data().data();
  const double* k = kernels.data().data();

  std::vector<double> out(out_c * out_h * out_w, 0.0);
  for (std::size_t oc = 0; oc < out_c; ++oc) {
    double* plane = out.data() + oc * out_h * out_w;
    for (std::size_t ic = 0; ic < in_c; ++ic) {
      const double* src = in + ic * in_h * in_w;
      for (std::size_t ky = 0; ky < kh; ++ky) {
        const Span1d rows = valid_outputs(out_h, in_h, ky, stride, padding);
        for (std::size_t kx = 0; kx < kw; ++kx) {
          const Span1d cols = valid_outputs(out_w, in_w, kx, stride, padding);
          const double wv = k[((oc * in_c + ic) * kh + ky) * kw + kx];
          const std::size_t n = cols.hi - cols.lo;
          const std::size_t ix0 = cols.lo * stride + kx - padding;
          for (std::size_t oy = rows.lo; oy < rows.hi; ++oy) {
            const double* s =
                src + (oy * stride + ky - padding) * in_w + ix0;
            double* d = plane + oy * out_w + cols.lo;
            for (std::size_t j = 0; j < n; ++j) d[j] += wv * s[j * stride];
          }
        }
      }
    }
    const double b = bias[oc];
    for (std::size_t i = 0; i < out_h * out_w; ++i) plane[i] += b;
  }
  return checked("conv2d", std::move(out_shape), std::move(out));
}

Tensor relu(const Tensor& x) {
  std::vector<double> out = x.values();
  for (double& v : out) v = v > 0.0 ? v : 0.0;
  return Tensor(x.shape(), std::move(out));
}

Tensor tanh(const Tensor& x) {
  std::vector<double> out = x.values();
  for (double& v : out) v = std::tanh(v);
  return Tensor(x.shape(), std::move(out));
}

PoolResult maxpool2d(const Tensor& x, std::size_t size, std::size_t stride) {
  Shape out_shape = maxpool2d_shape(x.shape(), size, stride);
  const std::size_t c = x.shape()[0], h = x.shape()[1], w = x.shape()[2];
  const std::size_t oh = out_shape[1], ow = out_shape[2];
  const double* in = x.data().data();
  std::vector<double> out(c * oh * ow);
  std::vector<std::size_t> argmax(out.size());
  for (std::size_t ch = 0; ch < c; ++ch) {
    for (std::size_t oy = 0; oy < oh; ++oy) {
      for (std::size_t ox = 0; ox < ow; ++ox) {
        std::size_t best = (ch * h + oy * stride) * w + ox * stride;
        for (std::size_t dy = 0; dy < size; ++dy) {
          for (std::size_t dx = 0; dx < size; ++dx) {
            const std::size_t idx =
                (ch * h + oy * stride + dy) * w + ox * stride + dx;
            if (in[idx] > in[best]) best = idx;
          }
        }
        const std::size_t o = (ch * oh + oy) * ow + ox;
        out[o] = in[best];
        argmax[o] = best;
      }
    }
  }
  return {Tensor(std::move(out_shape), std::move(out)), std::move(argmax)};
}

Tensor flatten(const Tensor& x) { return x.reshaped({x.size()}); }

Tensor dropout_inference(const Tensor& x, double rate) {
  if (!(rate >= 0.0 && rate < 1.0)) {
    throw PreconditionError("dropout: rate must lie in [0, 1), got " +
                            std::to_string(rate));
  }
  return x;
}

std::vector<double> dense_input_grad(std::span<const double> grad_out,
                                     const Tensor& weights) {
  const std::size_t rows = weights.shape()[0];
  const std::size_t cols = weights.shape()[1];
  const double* w = weights.data().data();
  std::vector<double> grad(cols, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const double g = grad_out[r];
    const double* row = w + r * cols;
    for (std::size_t c = 0; c < cols; ++c) grad[c] += row[c] * g;
  }
  return grad;
}

std::vector<double> conv2d_input_grad(std::span<const double> grad_out,
                                      const Shape& input_shape,
                                      const Tensor& kernels,
                                      std::size_t stride,
                                      std::size_t padding) {
  const std::size_t in_c = input_shape[0], in_h = input_shape[1],
                    in_w = input_shape[2];
  const std::size_t out_c = kernels.shape()[0];
  const std::size_t kh = kernels.shape()[2], kw = kernels.shape()[3];
  const std::size_t out_h = (in_h + 2 * padding - kh) / stride + 1;
  const std::size_t out_w = (in_w + 2 * padding - kw) / stride + 1;
  const double* k = kernels.data().data();

  std::vector<double> grad(in_c * in_h * in_w, 0.0);
  for (std::size_t oc = 0; oc < out_c; ++oc) {
    const double* gplane = grad_out.data() + oc * out_h * out_w;
    for (std::size_t ic = 0; ic < in_c; ++ic) {
      double* dst = grad.data() + ic * in_h * in_w;
      for (std::size_t ky = 0; ky < kh; ++ky) {
        const Span1d rows = valid_outputs(out_h, in_h, ky, stride, padding);
        for (std::size_t kx = 0; kx < kw; ++kx) {
          const Span1d cols = valid_outputs(out_w, in_w, kx, stride, padding);
          const double wv = k[((oc * in_c + ic) * kh + ky) * kw + kx];
          const std::size_t n = cols.hi - cols.lo;
          const std::size_t ix0 = cols.lo * stride + kx - padding;
          for (std::size_t oy = rows.lo; oy < rows.hi; ++oy) {
            double* d = dst + (oy * stride + ky - padding) * in_w + ix0;
            const double* g = gplane + oy * out_w + cols.lo;
            for (std::size_t j = 0; j < n; ++j) d[j * stride] += wv * g[j];
          }
        }
      }
    }
  }
  return grad;
}

std::vector<double> maxpool2d_input_grad(std::span<const double> grad_out,
                                         std::size_t input_size,
                                         std::span<const std::size_t> argmax) {
  std::vector<double> grad(input_size, 0.0);
  for (std::size_t o = 0; o < grad_out.size(); ++o) {
    grad[argmax[o]] += grad_out[o];
  }
  return grad;
}

}  // namespace pwig::ops
