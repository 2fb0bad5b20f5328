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

#include <pwig/attribution.hpp>
#include <pwig/axioms.hpp>
#include <pwig/errors.hpp>
#include <pwig/presets.hpp>
#include <pwig/transforms.hpp>
#include <pwig/weighting.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "test_util.hpp"

namespace pwig {
namespace {

using testing::random_tensor;

CheckOptions opts(std::uint64_t seed = 1, bool control = false) {
  CheckOptions o;
  o.seed = seed;
  o.control = control;
  return o;
}

double metric(const AxiomReport& r, const std::string& name) {
  for (const auto& [k, v] : r.metrics) {
    if (k == name) return v;
  }
  ADD_FAILURE() << "no metric " << name;
  return NAN;
}

Network linear(std::uint64_t seed) {
  return linear_model(random_tensor(seed, {3, 6}), random_tensor(seed + 1, {3}));
}

Network two_layer(std::uint64_t seed) {
  const std::size_t widths[] = {6, 4, 3};
  return random_mlp(widths, Activation::kTanh, seed);
}

TEST(Invariance, InsertIdentityOnLinearIsExact) {
  const AxiomReport r = check_implementation_invariance(
      linear(3), EquivalenceTransform::kInsertIdentity, opts());
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_deviation, 1e-12);
  EXPECT_EQ(r.trials, 20u);
  EXPECT_EQ(r.tolerance, 1e-9);
}

TEST(Invariance, PermuteOnTwoLayerMlpPasses) {
  const AxiomReport r = check_implementation_invariance(
      two_layer(4), EquivalenceTransform::kPermute, opts());
  EXPECT_TRUE(r.pass) << r.max_deviation;
  EXPECT_EQ(r.axiom, "implementation_invariance(permute)");
}

TEST(Invariance, ControlsFail) {
  for (EquivalenceTransform t :
       {EquivalenceTransform::kPermute, EquivalenceTransform::kInsertIdentity}) {
    const AxiomReport r = check_implementation_invariance(two_layer(4), t, opts(1, true));
    EXPECT_FALSE(r.pass);
    EXPECT_TRUE(r.control);
    EXPECT_GT(r.max_deviation, 1e-6);
  }
}

TEST(Invariance, ConvNetPermutation) {
  const AxiomReport r = check_implementation_invariance(
      toy_convnet(2), EquivalenceTransform::kPermute, opts());
  EXPECT_TRUE(r.pass) << r.max_deviation;
}

TEST(Invariance, InapplicableTransformThrows) {
  const Network single = linear(1);
  EXPECT_THROW(check_implementation_invariance(single, EquivalenceTransform::kPermute,
                                               opts()),
               PreconditionError);
}

TEST(Linearity, IdentityCombination) {
  const AxiomReport r = check_linearity(two_layer(1), two_layer(2), 1.0, 0.0, opts());
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_deviation, 1e-12);
}

TEST(Linearity, DoublingOracle) {
  const Network n = two_layer(5);
  const Network doubled = linear_combination(n, n, 1.0, 1.0);
  AttributionConfig c;
  c.steps = 50;
  c.target = std::size_t{1};
  const Tensor x = random_tensor(6, {6});
  const Tensor single = pwig(n, x, c).scores;
  const Tensor both = pwig(doubled, x, c).scores;
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(both[i], 2.0 * single[i], 1e-10);
  const AxiomReport r = check_linearity(n, n, 1.0, 1.0, opts());
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_deviation, 1e-10);
}

TEST(Linearity, RandomPairPassesAndControlFails) {
  const AxiomReport r = check_linearity(toy_mlp(1), toy_mlp(2), 2.5, -1.3, opts());
  EXPECT_TRUE(r.pass) << r.max_deviation;
  EXPECT_EQ(metric(r, "a"), 2.5);
  EXPECT_EQ(metric(r, "b"), -1.3);
  EXPECT_FALSE(check_linearity(toy_mlp(1), toy_mlp(2), 2.5, -1.3, opts(1, true)).pass);
}

TEST(Linearity, ShapeMismatchThrows) {
  EXPECT_THROW(check_linearity(toy_mlp(1), two_layer(1), 1.0, 1.0, opts()), Error);
}

TEST(Dummy, ZeroedColumnIsExactlyZero) {
  const AxiomReport r = check_dummy(zero_feature_influence(toy_mlp(3), 3), 3, opts());
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.max_deviation, 0.0);
  EXPECT_EQ(r.tolerance, 1e-12);
}

TEST(Dummy, UnzeroedNetFails) {
  const AxiomReport plain = check_dummy(toy_mlp(3), 3, opts());
  EXPECT_FALSE(plain.pass);
  EXPECT_GT(plain.max_deviation, 1e-6);
  const AxiomReport ctl =
      check_dummy(zero_feature_influence(toy_mlp(3), 3), 3, opts(1, true));
  EXPECT_FALSE(ctl.pass);
  EXPECT_THROW(check_dummy(toy_mlp(3), 6, opts()), PreconditionError);
}

TEST(Symmetry, EqualCoordinatesGiveEqualScores) {
  const AxiomReport r = check_symmetry(symmetric_pair_net(6, 1, 4, 2), 1, 4, opts());
  EXPECT_TRUE(r.pass);
  EXPECT_LE(r.max_deviation, 1e-12);
  EXPECT_EQ(r.skipped, 0u);
}

TEST(Symmetry, UnequalInputsAreSkippedNotFailed) {
  const AxiomReport r =
      check_symmetry(symmetric_pair_net(6, 1, 4, 2), 1, 4, opts(), false);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.skipped, r.trials);
}

TEST(Symmetry, AsymmetricNetFails) {
  EXPECT_FALSE(check_symmetry(toy_mlp(2), 1, 4, opts()).pass);
  EXPECT_FALSE(check_symmetry(symmetric_pair_net(6, 1, 4, 2), 1, 4, opts(1, true)).pass);
  EXPECT_THROW(check_symmetry(toy_mlp(2), 2, 2, opts()), PreconditionError);
}

// Right-Riemann sums on [0, 1] at the check's step count.
constexpr double kSteps = 500.0;

double right_sum_exp() {
  const double h = 1.0 / kSteps;
  return h * std::exp(h) * std::expm1(1.0) / std::expm1(h);
}

double right_sum_square() {
  return (kSteps + 1.0) * (2.0 * kSteps + 1.0) / (6.0 * kSteps * kSteps);
}

TEST(CompletenessViolation, ExponentialRelativeGap) {
  const AxiomReport r =
      check_completeness_violation(linear(7), WeightFunction::exponential(1.0), opts());
  EXPECT_TRUE(r.pass);
  const double want = right_sum_exp() - 1.0;
  EXPECT_NEAR(metric(r, "min_relative_gap"), want, 1e-9);
  EXPECT_NEAR(metric(r, "max_relative_gap"), want, 1e-9);
  EXPECT_NEAR(want, std::exp(1.0) - 2.0, 2e-3);
  EXPECT_LE(metric(r, "max_uniform_gap"), 1e-12);
}

TEST(CompletenessViolation, PowerTwoRelativeGap) {
  const AxiomReport r =
      check_completeness_violation(linear(8), WeightFunction::power(2.0), opts());
  EXPECT_TRUE(r.pass);
  EXPECT_NEAR(metric(r, "min_relative_gap"), 1.0 - right_sum_square(), 1e-9);
  EXPECT_NEAR(1.0 - right_sum_square(), 2.0 / 3.0, 2e-3);
}

TEST(CompletenessViolation, UniformOnLinearModelHasNoGap) {
  AttributionConfig c;
  c.weight = WeightFunction::uniform();
  EXPECT_LE(completeness_gap(linear(9), random_tensor(1, {6}), c), 1e-12);
  EXPECT_THROW(check_completeness_violation(linear(9), WeightFunction::uniform(), opts()),
               PreconditionError);
}

TEST(CompletenessViolation, ControlFailsAndNonlinearPasses) {
  EXPECT_FALSE(check_completeness_violation(linear(7), WeightFunction::exponential(1.0),
                                            opts(1, true))
                   .pass);
  EXPECT_TRUE(
      check_completeness_violation(toy_mlp(4), WeightFunction::exponential(1.0), opts())
          .pass);
}

TEST(Reports, ReproducibleFromSeeds) {
  const auto run = [](std::uint64_t seed) {
    std::vector<AxiomReport> v;
    v.push_back(check_implementation_invariance(toy_mlp(0), EquivalenceTransform::kPermute,
                                                opts(seed)));
    v.push_back(check_dummy(zero_feature_influence(toy_mlp(0), 3), 3, opts(seed)));
    return v;
  };
  const auto a = run(5), b = run(5), c = run(6);
  EXPECT_EQ(to_document(a), to_document(b));
  EXPECT_EQ(to_text(a), to_text(b));
  EXPECT_NE(a[0].trial_seeds, c[0].trial_seeds);
  EXPECT_EQ(a[0].trial_seeds.size(), 20u);
  EXPECT_EQ(a[0].seed, 5u);
}

TEST(Reports, PassMatchesTolerance) {
  for (bool control : {false, true}) {
    const AxiomReport r = check_linearity(toy_mlp(1), toy_mlp(2), 1.0, 1.0, opts(3, control));
    EXPECT_EQ(r.pass, r.max_deviation <= r.tolerance);
  }
}

TEST(Reports, TextAndDocumentShapes) {
  std::vector<AxiomReport> v{check_dummy(zero_feature_influence(toy_mlp(0), 3), 3, opts()),
                             check_dummy(zero_feature_influence(toy_mlp(0), 3), 3,
                                         opts(1, true))};
  const std::string text = to_text(v);
  EXPECT_NE(text.find("PASS"), std::string::npos);
  EXPECT_NE(text.find("FAIL"), std::string::npos);
  const std::string doc = to_document(v);
  EXPECT_EQ(doc.front(), '[');
  EXPECT_NE(doc.find("\"axiom\": \"dummy\""), std::string::npos);
}

TEST(RandomWeight, AlwaysValid) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const WeightFunction w = random_weight(s);
    EXPECT_FALSE(validate_weight(w).has_value()) << w.spec();
    EXPECT_FALSE(w.is_uniform());
  }
}

}  // namespace
}  // namespace pwig
