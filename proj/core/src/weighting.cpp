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

#include "pwig/weighting.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>

#include "internal.hpp"
#include "pwig/errors.hpp"
#include "pwig/model_io.hpp"

namespace pwig {
namespace {

using detail::format_double;
using detail::Overloaded;

double base_value(const WeightFunction::Form& form, double alpha) {
  return std::visit(
      Overloaded{
          [](const UniformWeight&) { return 1.0; },
          [&](const ExponentialWeight& e) { return std::exp(e.c * alpha); },
          [&](const PowerWeight& p) { return std::pow(alpha, p.p); },
          [&](const TabulatedWeight& t) {
            const auto it =
                std::upper_bound(t.alphas.begin(), t.alphas.end(), alpha);
            if (it == t.alphas.end()) return t.values.back();
            const std::size_t hi =
                static_cast<std::size_t>(it - t.alphas.begin());
            const std::size_t lo = hi - 1;
            if (alpha == t.alphas[lo]) return t.values[lo];
            const double f =
                (alpha - t.alphas[lo]) / (t.alphas[hi] - t.alphas[lo]);
            return t.values[lo] + f * (t.values[hi] - t.values[lo]);
          }},
      form);
}

double base_integral(const WeightFunction::Form& form) {
  return std::visit(
      Overloaded{[](const UniformWeight&) { return 1.0; },
                 [](const ExponentialWeight& e) {
                   return e.c == 0.0 ? 1.0 : std::expm1(e.c) / e.c;
                 },
                 [](const PowerWeight& p) { return 1.0 / (p.p + 1.0); },
                 [](const TabulatedWeight& t) {
                   double acc = 0.0;
                   for (std::size_t k = 0; k + 1 < t.alphas.size(); ++k) {
                     acc += 0.5 * (t.values[k] + t.values[k + 1]) *
                            (t.alphas[k + 1] - t.alphas[k]);
                   }
                   return acc;
                 }},
      form);
}

double parse_number(std::string_view text, std::string_view what) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  while (first < last && (*first == ' ' || *first == '\t')) ++first;
  while (last > first && (last[-1] == ' ' || last[-1] == '\t' ||
                          last[-1] == '\r')) {
    --last;
  }
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || first == last ||
      !std::isfinite(v)) {
    throw ParseError("invalid number '" + std::string(text) + "' in " +
                     std::string(what));
  }
  return v;
}

}  // namespace

WeightFunction WeightFunction::uniform() { return WeightFunction(); }

WeightFunction WeightFunction::exponential(double c) {
  if (!std::isfinite(c)) {
    throw PreconditionError("exponential weight needs a finite c");
  }
  WeightFunction w;
  w.form_ = ExponentialWeight{c};
  return w;
}

WeightFunction WeightFunction::power(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) {
    throw PreconditionError("power weight needs finite p >= 0, got " +
                            format_double(p));
  }
  WeightFunction w;
  w.form_ = PowerWeight{p};
  return w;
}

WeightFunction WeightFunction::tabulated(std::vector<double> alphas,
                                         std::vector<double> values,
                                         std::string label) {
  if (alphas.size() < 2 || alphas.size() != values.size()) {
    throw PreconditionError(
        "tabulated weight needs >= 2 breakpoints with one value each");
  }
  if (alphas.front() != 0.0 || alphas.back() != 1.0) {
    throw PreconditionError("tabulated weight must cover alpha = 0 and 1");
  }
  for (std::size_t k = 1; k < alphas.size(); ++k) {
    if (!(alphas[k] > alphas[k - 1])) {
      throw PreconditionError(
          "tabulated weight alphas must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw PreconditionError("tabulated weight values must be finite");
    }
  }
  WeightFunction w;
  w.form_ = TabulatedWeight{std::move(alphas), std::move(values)};
  w.label_ = std::move(label);
  return w;
}

bool WeightFunction::is_uniform() const noexcept {
  return std::holds_alternative<UniformWeight>(form_) && gain_ == 1.0;
}

WeightFunction WeightFunction::scaled(double factor) const {
  if (!(factor >= 0.0) || !std::isfinite(factor)) {
    throw PreconditionError("weight scale factor must be finite and >= 0");
  }
  WeightFunction w = *this;
  w.gain_ = gain_ * factor;
  return w;
}

namespace {

// Spec tokens keep a decimal point so "exp:1.0" round-trips as written.
std::string spec_number(double v) {
  std::string s = format_double(v);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

}  // namespace

std::string WeightFunction::spec() const {
  std::string base = std::visit(
      Overloaded{
          [](const UniformWeight&) { return std::string("uniform"); },
          [](const ExponentialWeight& e) { return "exp:" + spec_number(e.c); },
          [](const PowerWeight& p) { return "pow:" + spec_number(p.p); },
          [&](const TabulatedWeight& t) {
            return label_.empty()
                       ? "table[" + std::to_string(t.alphas.size()) + "]"
                       : "table:" + label_;
          }},
      form_);
  if (gain_ == 1.0) return base;
  return spec_number(gain_) + "*" + base;
}

double eval_weight(const WeightFunction& w, double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw PreconditionError("weight evaluated outside [0, 1] at alpha = " +
                            format_double(alpha));
  }
  const double v = base_value(w.form(), alpha);
  return w.gain() == 1.0 ? v : w.gain() * v;
}

double weight_integral(const WeightFunction& w) {
  const double v = base_integral(w.form());
  return w.gain() == 1.0 ? v : w.gain() * v;
}

std::optional<WeightViolation> validate_weight(const WeightFunction& w) {
  // Breakpoints first, so a negative sample is reported at its own alpha
  // rather than at the grid point where the interpolant first dips.
  if (const auto* t = std::get_if<TabulatedWeight>(&w.form())) {
    for (double a : t->alphas) {
      const double v = eval_weight(w, a);
      if (!(v >= 0.0) || !std::isfinite(v)) return WeightViolation{a, v};
    }
  }
  for (int k = 0; k <= 1000; ++k) {
    const double a = k / 1000.0;
    const double v = eval_weight(w, a);
    if (!(v >= 0.0) || !std::isfinite(v)) return WeightViolation{a, v};
  }
  return std::nullopt;
}

WeightFunction normalized(const WeightFunction& w) {
  const double integral = weight_integral(w);
  if (!(integral > 0.0) || !std::isfinite(integral)) {
    throw PreconditionError("cannot normalize a weight with integral " +
                            format_double(integral));
  }
  return w.scaled(1.0 / integral);
}

WeightFunction add_tabulated(const WeightFunction& a, const WeightFunction& b) {
  const auto* ta = std::get_if<TabulatedWeight>(&a.form());
  const auto* tb = std::get_if<TabulatedWeight>(&b.form());
  if (!ta || !tb) {
    throw PreconditionError("add_tabulated needs two tabulated weights");
  }
  std::set<double> knots(ta->alphas.begin(), ta->alphas.end());
  knots.insert(tb->alphas.begin(), tb->alphas.end());
  std::vector<double> alphas(knots.begin(), knots.end());
  std::vector<double> values;
  values.reserve(alphas.size());
  for (double x : alphas) values.push_back(eval_weight(a, x) + eval_weight(b, x));
  return WeightFunction::tabulated(std::move(alphas), std::move(values));
}

WeightFunction parse_weight_spec(std::string_view spec) {
  if (spec == "uniform") return WeightFunction::uniform();
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("unknown weight spec '" + std::string(spec) +
                     "' (expected uniform, exp:<c>, pow:<p> or table:<path>)");
  }
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view arg = spec.substr(colon + 1);
  try {
    if (kind == "exp") {
      return WeightFunction::exponential(parse_number(arg, "exp:<c>"));
    }
    if (kind == "pow") {
      return WeightFunction::power(parse_number(arg, "pow:<p>"));
    }
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
  if (kind == "table") {
    const std::string path(arg);
    return load_tabulated_csv(read_text_file(path), path);
  }
  throw ParseError("unknown weight kind '" + std::string(kind) + "'");
}

WeightFunction load_tabulated_csv(std::string_view text, std::string label) {
  std::vector<double> alphas, values;
  std::size_t line_no = 0;
  bool header = false;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    if (!header) {
      if (line != "alpha,value") {
        throw ParseError("weight table line " + std::to_string(line_no) +
                         ": expected header 'alpha,value'");
      }
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("weight table line " + std::to_string(line_no) +
                       ": expected two comma-separated columns");
    }
    const std::string where = "weight table line " + std::to_string(line_no);
    alphas.push_back(parse_number(line.substr(0, comma), where));
    values.push_back(parse_number(line.substr(comma + 1), where));
    if (end == text.size()) break;
  }
  if (!header) throw ParseError("weight table: missing 'alpha,value' header");
  try {
    return WeightFunction::tabulated(std::move(alphas), std::move(values),
                                     std::move(label));
  } catch (const PreconditionError& e) {
    throw ParseError(std::string("weight table: ") + e.what());
  }
}

}  // namespace pwig
