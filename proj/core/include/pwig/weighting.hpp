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

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace pwig {

struct UniformWeight {};
struct ExponentialWeight {
  double c = 1.0;  // g(a) = exp(c a)
};
struct PowerWeight {
  double p = 1.0;  // g(a) = a^p, p >= 0
};
// Piecewise-linear through (alphas[k], values[k]); alphas strictly
// increasing, first 0 and last 1.
struct TabulatedWeight {
  std::vector<double> alphas;
  std::vector<double> values;
};

/// The path weighting g on [0, 1].
///
/// A base shape from the variant times a non-negative gain. The gain is 1
/// unless the function was built with scaled() or normalized(); it is how
/// s*g is represented for every variant without losing the closed-form
/// integral.
class WeightFunction {
 public:
  using Form =
      std::variant<UniformWeight, ExponentialWeight, PowerWeight,
                   TabulatedWeight>;

  WeightFunction() = default;  // uniform

  static WeightFunction uniform();
  static WeightFunction exponential(double c);
  static WeightFunction power(double p);
  // Throws PreconditionError unless the breakpoints are strictly increasing
  // from 0 to 1 with matching value count. Values are not sign-checked here;
  // that is validate_weight's job.
  static WeightFunction tabulated(std::vector<double> alphas,
                                  std::vector<double> values,
                                  std::string label = {});

  const Form& form() const noexcept { return form_; }
  double gain() const noexcept { return gain_; }
  bool is_uniform() const noexcept;

  WeightFunction scaled(double factor) const;

  // Compact spec like "exp:1", "pow:2", "uniform", "table:<path>", prefixed
  // by "<gain>*" when the gain is not 1.
  std::string spec() const;

 private:
  Form form_ = UniformWeight{};
  double gain_ = 1.0;
  std::string label_;
};

double eval_weight(const WeightFunction& w, double alpha);
double weight_integral(const WeightFunction& w);

struct WeightViolation {
  double alpha;
  double value;
};

// Checks g >= 0 (and finite) on the 1001-point grid k/1000 and at every
// tabulated breakpoint. Returns the smallest violating alpha, if any.
std::optional<WeightViolation> validate_weight(const WeightFunction& w);

// g / integral(g). Throws PreconditionError when the integral is not positive.
WeightFunction normalized(const WeightFunction& w);

// Pointwise sum of two tabulated functions, on the union of breakpoints.
WeightFunction add_tabulated(const WeightFunction& a, const WeightFunction& b);

// Parses "uniform", "exp:<c>", "pow:<p>" or "table:<path>" (two-column CSV
// read from disk). Throws ParseError.
WeightFunction parse_weight_spec(std::string_view spec);

// CSV with header "alpha,value" and one breakpoint per line.
WeightFunction load_tabulated_csv(std::string_view text,
                                  std::string label = {});

}  // namespace pwig
