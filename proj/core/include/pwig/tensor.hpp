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

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace pwig {

using Shape = std::vector<std::size_t>;

std::size_t element_count(std::span<const std::size_t> shape);
std::string shape_string(std::span<const std::size_t> shape);

/// Dense row-major array of doubles.
///
/// Every dimension is positive, the element count matches the shape, and
/// every element is finite. The constructor enforces all three, so a Tensor
/// that exists is valid. Tensors are immutable values; "modifying" one means
/// building a new one from its data.
class Tensor {
 public:
  Tensor(Shape shape, std::vector<double> data);

  static Tensor zeros(Shape shape);
  static Tensor filled(Shape shape, double value);
  static Tensor vector(std::vector<double> values);
  static Tensor matrix(std::size_t rows, std::size_t cols,
                       std::vector<double> values);

  const Shape& shape() const noexcept { return shape_; }
  std::size_t rank() const noexcept { return shape_.size(); }
  std::size_t size() const noexcept { return data_.size(); }
  std::span<const double> data() const noexcept { return data_; }
  double operator[](std::size_t i) const noexcept { return data_[i]; }
  double at(std::size_t i) const;

  // Copy of the underlying storage, for building derived tensors.
  std::vector<double> values() const { return data_; }
  std::vector<double> release() && { return std::move(data_); }

  Tensor reshaped(Shape shape) const;

  friend bool operator==(const Tensor& a, const Tensor& b) = default;

 private:
  Shape shape_;
  std::vector<double> data_;
};

// Same shape and same bit pattern in every element (distinguishes -0.0).
bool bitwise_equal(const Tensor& a, const Tensor& b);

double max_abs_difference(const Tensor& a, const Tensor& b);

bool all_finite(std::span<const double> values);

}  // namespace pwig
