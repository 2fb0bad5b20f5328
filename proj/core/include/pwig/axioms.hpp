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
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pwig/network.hpp"
#include "pwig/weighting.hpp"

namespace pwig {

/// Verdict of one executable axiom check.
///
/// `pass` is exactly `max_deviation <= tolerance`. Every random draw of a
/// trial (input, baseline, weight, step count, class) comes from
/// Rng(trial_seeds[t]), and trial_seeds derive from `seed`, so a report can
/// be regenerated from (seed, trials) alone.
struct AxiomReport {
  std::string axiom;
  bool control = false;  // deliberately broken witness; expected to fail
  bool pass = false;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  std::size_t trials = 0;
  std::size_t skipped = 0;
  std::uint64_t seed = 0;
  std::vector<std::uint64_t> trial_seeds;
  std::vector<std::pair<std::string, double>> metrics;
};

struct CheckOptions {
  std::size_t trials = 20;
  std::uint64_t seed = 0;
  // Run against a deliberately broken witness. A sound check must fail.
  bool control = false;
  std::size_t threads = 1;
};

enum class EquivalenceTransform { kPermute, kInsertIdentity };

inline constexpr double kStructuralTolerance = 1e-12;
inline constexpr double kReorderedTolerance = 1e-9;

// max |PWIG(net) - PWIG(transform(net))| over trials with random inputs and
// random exponential/power/tabulated weights at 50 steps. Permute acts on
// the first parametric layer that is followed by another one; insert-identity
// goes before the first vector-shaped activation. Control mode perturbs one
// weight of the transformed net by 1e-3.
AxiomReport check_implementation_invariance(const Network& net,
                                            EquivalenceTransform transform,
                                            const CheckOptions& options);

// max |PWIG(a F1 + b F2) - (a PWIG(F1) + b PWIG(F2))| with the combined
// network from linear_combination. Control mode perturbs the combined net.
AxiomReport check_linearity(const Network& net1, const Network& net2, double a,
                            double b, const CheckOptions& options);

// max |PWIG_k| over random inputs, baselines, weights and step counts.
// Control mode adds 1e-3 to column k of the first Dense layer.
AxiomReport check_dummy(const Network& net, std::size_t feature_index,
                        const CheckOptions& options);

// max |PWIG_i - PWIG_j| on inputs and baselines with x_i = x_j, x'_i = x'_j.
// With equalize = false the raw random draws are used and trials violating
// that precondition are counted as skipped. Control mode adds 1e-3 to the
// first-layer column i.
AxiomReport check_symmetry(const Network& net, std::size_t i, std::size_t j,
                           const CheckOptions& options, bool equalize = true);

// Non-uniform weights must leave a completeness gap of at least
// 1e-3 |F(x) - F(x')| while the uniform weight on the same trials stays
// within the right-endpoint quadrature bound |f(1) - f(0)| / m + 1e-9,
// f(a) = grad F(path(a)) . (x - x'). Trials with |F(x) - F(x')| < 1e-6 are
// skipped. Deviation is the worst relative shortfall, tolerance 0. Control
// mode swaps `weight` for the uniform weight.
AxiomReport check_completeness_violation(const Network& net,
                                         const WeightFunction& weight,
                                         const CheckOptions& options);

// Seeded random exponential / power / tabulated weight.
WeightFunction random_weight(std::uint64_t seed);

std::string to_text(std::span<const AxiomReport> reports);
// JSON array, one object per report.
std::string to_document(std::span<const AxiomReport> reports);

}  // namespace pwig
