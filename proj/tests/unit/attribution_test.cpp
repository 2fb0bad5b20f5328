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
#include <pwig/errors.hpp>
#include <pwig/network.hpp>
#include <pwig/presets.hpp>
#include <pwig/rng.hpp>
#include <pwig/tape.hpp>
#include <pwig/transforms.hpp>
#include <pwig/weighting.hpp>

#include <cmath>
#include <string>

#include "test_util.hpp"

namespace pwig {
namespace {

using testing::random_tensor;

constexpr double kEm1 = 1.718281828459045;

AttributionConfig config(WeightFunction w, std::size_t m,
                         Scheme s = Scheme::kRight) {
  AttributionConfig c;
  c.weight = std::move(w);
  c.steps = m;
  c.scheme = s;
  return c;
}

// F(x) = 2x as a two-class network (class 0).
Network two_x() {
  return linear_model(Tensor::matrix(2, 1, {2.0, 0.0}), Tensor::vector({0, 0}));
}

const ScalarFunction kSquare = [](Tape& t, Var x) { return t.sum(t.square(x)); };

Network tanh_mlp(std::uint64_t seed) {
  const std::size_t widths[] = {5, 8, 6, 3};
  return random_mlp(widths, Activation::kTanh, seed);
}

TEST(Interpolate, EndpointsAndMidpoint) {
  const Tensor b = random_tensor(1, {4}), x = random_tensor(2, {4});
  EXPECT_TRUE(bitwise_equal(interpolate(b, x, 0.0), b));
  EXPECT_TRUE(bitwise_equal(interpolate(b, x, 1.0), x));
  EXPECT_EQ(interpolate(Tensor::vector({0, 0}), Tensor::vector({2, 4}), 0.5).values(),
            (std::vector<double>{1, 2}));
  EXPECT_THROW(interpolate(b, Tensor::vector({1, 2}), 0.5), ShapeError);
  EXPECT_THROW(interpolate(b, x, 1.5), PreconditionError);
}

TEST(Quadrature, NodesPerScheme) {
  const auto r = quadrature_nodes(Scheme::kRight, 4);
  ASSERT_EQ(r.size(), 4u);
  EXPECT_EQ(r[0].alpha, 0.25);
  EXPECT_EQ(r[3].alpha, 1.0);
  const auto mid = quadrature_nodes(Scheme::kMidpoint, 4);
  EXPECT_EQ(mid[0].alpha, 0.125);
  EXPECT_EQ(mid[3].alpha, 0.875);
  const auto tr = quadrature_nodes(Scheme::kTrapezoid, 4);
  ASSERT_EQ(tr.size(), 5u);
  EXPECT_EQ(tr[0].alpha, 0.0);
  EXPECT_EQ(tr[0].units, 0.5);
  EXPECT_EQ(tr[2].units, 1.0);
  EXPECT_EQ(tr[4].units, 0.5);
  EXPECT_THROW(quadrature_nodes(Scheme::kRight, 0), PreconditionError);
}

TEST(Pwig, LinearUniformIsExact) {
  for (std::size_t m : {1u, 7u, 50u, 1000u}) {
    const AttributionMap a =
        pwig(two_x(), Tensor::vector({3.0}), config(WeightFunction::uniform(), m));
    EXPECT_EQ(a.scores[0], 6.0) << m;
    EXPECT_LE(a.completeness_gap, 1e-12);
    EXPECT_EQ(a.resolved_class, 0u);
  }
}

TEST(Pwig, LinearExponentialClosedForm) {
  const AttributionMap a = pwig(two_x(), Tensor::vector({3.0}),
                                config(WeightFunction::exponential(1.0), 100000));
  const double want = 6.0 * kEm1;
  EXPECT_LE(std::abs(a.scores[0] - want) / want, 1e-4);
  EXPECT_NEAR(a.completeness_gap, want - 6.0, 1e-3);
  EXPECT_NEAR(a.completeness_gap, 4.3097, 1e-3);
}

TEST(Pwig, QuadraticRightRiemannValue) {
  const AttributionMap a =
      pwig(kSquare, Tensor::vector({2.0}), config(WeightFunction::uniform(), 50));
  EXPECT_EQ(a.scores[0], 4.08);
  EXPECT_EQ(a.completeness_gap, 4.08 - 4.0);  // 0.08 up to the rounding of 4.08
  for (std::size_t m : {3u, 10u, 400u}) {
    const AttributionMap b =
        pwig(kSquare, Tensor::vector({2.0}), config(WeightFunction::uniform(), m));
    EXPECT_NEAR(b.scores[0], 4.0 * (m + 1.0) / m, 1e-12) << m;
  }
}

TEST(Pwig, QuadraticMidpointAndTrapezoidAreExact) {
  // The integrand 4 alpha is linear, so both rules integrate it exactly.
  for (Scheme s : {Scheme::kMidpoint, Scheme::kTrapezoid}) {
    const AttributionMap a = pwig(kSquare, Tensor::vector({2.0}),
                                  config(WeightFunction::uniform(), 50, s));
    EXPECT_NEAR(a.scores[0], 4.0, 1e-12) << scheme_name(s);
  }
}

TEST(Pwig, ExponentialOnQuadraticMatchesAnalyticSum) {
  // Right sum of e^(k/m) * 8 (k/m) / m for F = x^2, x = 2.
  const std::size_t m = 37;
  double want = 0.0;
  for (std::size_t k = 1; k <= m; ++k) {
    const double a = double(k) / m;
    want += std::exp(a) * 8.0 * a;
  }
  want /= m;
  const AttributionMap a = pwig(kSquare, Tensor::vector({2.0}),
                                config(WeightFunction::exponential(1.0), m));
  EXPECT_NEAR(a.scores[0], want, 1e-12);
}

TEST(Ig, DelegatesToUniformPwigBitwise) {
  Rng rng(5);
  for (int t = 0; t < 10; ++t) {
    const Network net = tanh_mlp(t);
    const Tensor x = random_tensor(rng, {5});
    const Tensor b = random_tensor(rng, {5});
    const std::size_t m = 1 + rng.below(80);
    const AttributionMap a = ig(net, x, TensorBaseline{b, "b"}, std::size_t{1}, m);
    AttributionConfig c = config(WeightFunction::uniform(), m);
    c.baseline = TensorBaseline{b, "b"};
    c.target = std::size_t{1};
    const AttributionMap p = pwig(net, x, c);
    EXPECT_TRUE(bitwise_equal(a.scores, p.scores));
    EXPECT_EQ(a.completeness_gap, p.completeness_gap);
  }
}

TEST(Ig, LinearClosedForm) {
  const Tensor w = random_tensor(3, {2, 4});
  const Network net = linear_model(w, random_tensor(4, {2}));
  const Tensor x = random_tensor(5, {4}), b = random_tensor(6, {4});
  const AttributionMap a = ig(net, x, TensorBaseline{b, ""}, std::size_t{0}, 50);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(a.scores[i], (x[i] - b[i]) * w[i], 1e-15);
  }
}

TEST(Pwig, ZeroDifferenceGivesZeroScores) {
  const Network net = tanh_mlp(2);
  const Tensor x = random_tensor(9, {5});
  for (const WeightFunction& w : {WeightFunction::uniform(), WeightFunction::exponential(2.0),
                                  WeightFunction::power(0.5)}) {
    for (std::size_t m : {1u, 13u}) {
      AttributionConfig c = config(w, m);
      c.baseline = TensorBaseline{x, ""};
      const AttributionMap a = pwig(net, x, c);
      for (double s : a.scores.data()) EXPECT_EQ(s, 0.0);
    }
  }
}

TEST(CompletenessGap, Examples) {
  EXPECT_LE(completeness_gap(two_x(), Tensor::vector({3.0}),
                             config(WeightFunction::uniform(), 50)),
            1e-12);
  EXPECT_NEAR(completeness_gap(two_x(), Tensor::vector({3.0}),
                               config(WeightFunction::exponential(1.0), 100000)),
              6.0 * kEm1 - 6.0, 1e-3);
}

TEST(CompletenessGap, RightSchemeConvergesAsOneOverM) {
  Rng rng(12);
  for (int t = 0; t < 5; ++t) {
    const Network net = tanh_mlp(100 + t);
    const Tensor x = random_tensor(rng, {5}, -2, 2);
    const double g50 = completeness_gap(net, x, config(WeightFunction::uniform(), 50));
    const double g2000 =
        completeness_gap(net, x, config(WeightFunction::uniform(), 2000));
    EXPECT_LE(g2000, 0.1 * g50) << t;
  }
}

TEST(CompletenessGap, MidpointConvergesAsOneOverMSquared) {
  Rng rng(13);
  for (int t = 0; t < 5; ++t) {
    const Network net = tanh_mlp(200 + t);
    const Tensor x = random_tensor(rng, {5}, -2, 2);
    const auto mid = [&](std::size_t m) {
      return completeness_gap(net, x,
                              config(WeightFunction::uniform(), m, Scheme::kMidpoint));
    };
    EXPECT_LE(mid(200), 0.02 * mid(20)) << t;
  }
}

TEST(Series, ReconstructsScores) {
  Rng rng(14);
  for (Scheme s : {Scheme::kRight, Scheme::kMidpoint, Scheme::kTrapezoid}) {
    const Network net = toy_convnet(3);
    const Tensor x = random_tensor(rng, {2, 6, 6});
    const AttributionConfig c = config(WeightFunction::exponential(0.7), 17, s);
    const auto series = attribution_series(net, x, c);
    EXPECT_EQ(series.size(), s == Scheme::kTrapezoid ? 18u : 17u);
    const AttributionMap a = pwig(net, x, c);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double sum = 0.0;
      for (const SeriesNode& n : series) sum += n.contribution[i];
      EXPECT_NEAR(sum * x[i], a.scores[i], 1e-12);
    }
  }
}

TEST(Series, LinearContributionsFollowWeight) {
  const Tensor w = Tensor::matrix(2, 3, {1.5, -2.0, 0.5, 0, 0, 0});
  const Network net = linear_model(w, Tensor::vector({0, 0}));
  AttributionConfig c = config(WeightFunction::exponential(1.0), 10);
  c.target = std::size_t{0};
  const auto series = attribution_series(net, Tensor::vector({1, 2, 3}), c);
  for (const SeriesNode& n : series) {
    const double gm = std::exp(n.alpha) / 10.0;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_NEAR(n.contribution[i], w[i] * gm, 1e-15);
    }
  }
}

TEST(Series, DummyFeatureContributesNothing) {
  const Network net = zero_feature_influence(toy_mlp(1), 2);
  const auto series = attribution_series(net, random_tensor(3, {6}),
                                         config(WeightFunction::power(2.0), 25));
  for (const SeriesNode& n : series) EXPECT_EQ(n.contribution[2], 0.0);
}

TEST(Pwig, LinearInWeightFunction) {
  const WeightFunction g1 = WeightFunction::tabulated({0, 0.3, 1}, {1, 0.2, 2});
  const WeightFunction g2 = WeightFunction::tabulated({0, 0.6, 1}, {0, 3, 0.5});
  const WeightFunction sum = add_tabulated(g1, g2);
  const Network net = tanh_mlp(7);
  Rng rng(15);
  for (int t = 0; t < 5; ++t) {
    const Tensor x = random_tensor(rng, {5});
    for (Scheme s : {Scheme::kRight, Scheme::kTrapezoid}) {
      const Tensor a = pwig(net, x, config(g1, 40, s)).scores;
      const Tensor b = pwig(net, x, config(g2, 40, s)).scores;
      const Tensor c = pwig(net, x, config(sum, 40, s)).scores;
      for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(c[i], a[i] + b[i], 1e-10);
    }
  }
}

TEST(Pwig, ScaleEquivariantInWeight) {
  const WeightFunction g = WeightFunction::tabulated({0, 0.5, 1}, {0.3, 1.7, 0.9});
  const Network net = tanh_mlp(8);
  const Tensor x = random_tensor(16, {5});
  const Tensor base = pwig(net, x, config(g, 30)).scores;
  for (double s : {0.0, 0.5, 3.0}) {
    const Tensor scaled = pwig(net, x, config(g.scaled(s), 30)).scores;
    for (std::size_t i = 0; i < 5; ++i) EXPECT_NEAR(scaled[i], s * base[i], 1e-12);
  }
}

TEST(Pwig, DeterministicAcrossThreadCounts) {
  const Network net = toy_convnet(9);
  const Tensor x = random_tensor(17, {2, 6, 6});
  AttributionConfig c = config(WeightFunction::exponential(1.0), 64);
  c.threads = 1;
  const AttributionMap one = pwig(net, x, c);
  for (std::size_t threads : {2u, 3u, 8u}) {
    c.threads = threads;
    const AttributionMap many = pwig(net, x, c);
    EXPECT_TRUE(bitwise_equal(one.scores, many.scores)) << threads;
    EXPECT_EQ(to_document(one), to_document(many));
  }
}

TEST(Pwig, BaselinesResolve) {
  const Network net = tanh_mlp(3);
  const Tensor x = random_tensor(18, {5});
  AttributionConfig c = config(WeightFunction::uniform(), 20);
  c.baseline = ConstantBaseline{0.25};
  AttributionConfig t = c;
  t.baseline = TensorBaseline{Tensor::filled({5}, 0.25), "quarter"};
  EXPECT_TRUE(bitwise_equal(pwig(net, x, c).scores, pwig(net, x, t).scores));
  EXPECT_EQ(baseline_spec(c.baseline), "const:0.25");
  EXPECT_EQ(baseline_spec(t.baseline), "file:quarter");
  EXPECT_EQ(baseline_spec(ZeroBaseline{}), "zero");
  t.baseline = TensorBaseline{Tensor::zeros({4}), ""};
  EXPECT_THROW(pwig(net, x, t), ShapeError);
}

TEST(Pwig, TargetSelection) {
  const Network net = tanh_mlp(4);
  const Tensor x = random_tensor(19, {5});
  AttributionConfig c = config(WeightFunction::uniform(), 10);
  const AttributionMap a = pwig(net, x, c);
  EXPECT_EQ(a.resolved_class, argmax(forward(net, x)));
  EXPECT_EQ(a.config.target, "argmax");
  c.target = std::size_t{2};
  EXPECT_EQ(pwig(net, x, c).resolved_class, 2u);
  c.target = std::size_t{3};
  EXPECT_THROW(pwig(net, x, c), PreconditionError);
}

TEST(Pwig, RejectsInvalidConfig) {
  const Network net = tanh_mlp(4);
  const Tensor x = random_tensor(20, {5});
  EXPECT_THROW(pwig(net, x, config(WeightFunction::uniform(), 0)), PreconditionError);
  EXPECT_THROW(pwig(net, x, config(WeightFunction::tabulated({0, 1}, {1, -1}), 5)),
               PreconditionError);
  EXPECT_THROW(pwig(net, Tensor::zeros({4}), config(WeightFunction::uniform(), 5)),
               ShapeError);
}

TEST(Pwig, NonFiniteGradientNamesNode) {
  // Finite values everywhere, but the chain rule overflows.
  const ScalarFunction f = [](Tape& t, Var x) {
    return t.sum(t.scale(t.tanh(t.scale(x, 1e300)), 1e300));
  };
  try {
    pwig(f, Tensor::vector({1e-300}), config(WeightFunction::uniform(), 4));
    FAIL() << "expected NumericError";
  } catch (const NumericError& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("alpha = 0.25"), std::string::npos) << msg;
  }
}

TEST(Document, RoundTrip) {
  const Network net = toy_convnet(1);
  const Tensor x = random_tensor(21, {2, 6, 6});
  AttributionConfig c = config(WeightFunction::power(1.5), 12, Scheme::kMidpoint);
  c.baseline = ConstantBaseline{-0.5};
  const AttributionMap a = pwig(net, x, c);
  const std::string doc = to_document(a);
  const AttributionMap b = parse_attribution_document(doc);
  EXPECT_TRUE(bitwise_equal(a.scores, b.scores));
  EXPECT_EQ(b.completeness_gap, a.completeness_gap);
  EXPECT_EQ(b.model_digest, model_digest(net));
  EXPECT_EQ(b.config.weight, "pow:1.5");
  EXPECT_EQ(b.config.scheme, "midpoint");
  EXPECT_EQ(b.config.baseline, "const:-0.5");
  EXPECT_EQ(b.config.steps, 12u);
  EXPECT_EQ(to_document(b), doc);
  EXPECT_THROW(parse_attribution_document("{\"format_version\": 1}"), ParseError);
}

TEST(Document, CsvListsEveryFeature) {
  const AttributionMap a =
      pwig(kSquare, Tensor::vector({2.0, -1.0}), config(WeightFunction::uniform(), 50));
  EXPECT_EQ(to_csv(a), "feature,score\n0,4.08\n1,1.02\n");
}

}  // namespace
}  // namespace pwig
