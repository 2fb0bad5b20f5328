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
#include <pwig/model_io.hpp>
#include <pwig/parallel.hpp>
#include <pwig/rng.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace pwig {
namespace {

TEST(Rng, EngineIsStandardMt19937_64) {
  // The standard requires this value for the 10000th default-seeded draw.
  Rng rng(5489);
  std::uint64_t v = 0;
  for (int i = 0; i < 10000; ++i) v = rng.next_u64();
  EXPECT_EQ(v, 9981545732273789042ULL);
}

TEST(Rng, Splitmix64ReferenceValues) {
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(splitmix64(0x9e3779b97f4a7c15ULL), 0x6e789e6aa1b965f4ULL);
}

TEST(Rng, UniformStaysInRange) {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double u = rng.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const double v = rng.uniform(-2.0, 3.0);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, 3.0);
  }
}

TEST(Rng, BelowCoversRangeUniformly) {
  Rng rng(2);
  std::vector<int> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.below(7)];
  for (int c : counts) EXPECT_NEAR(c, 10000, 500);
  EXPECT_THROW(rng.below(0), PreconditionError);
}

TEST(Rng, ShuffleIsSeededPermutation) {
  std::vector<int> a(50), b(50);
  std::iota(a.begin(), a.end(), 0);
  std::iota(b.begin(), b.end(), 0);
  Rng r1(3), r2(3);
  r1.shuffle(std::span<int>(a));
  r2.shuffle(std::span<int>(b));
  EXPECT_EQ(a, b);
  std::vector<int> sorted = a;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
}

TEST(Parallel, VisitsEveryIndexOnce) {
  for (std::size_t threads : {1u, 2u, 5u, 64u}) {
    std::vector<std::atomic<int>> hits(37);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(Parallel, RethrowsLowestFailingIndex) {
  for (std::size_t threads : {1u, 4u}) {
    try {
      parallel_for(20, threads, [](std::size_t i) {
        if (i == 7 || i == 13) throw std::runtime_error(std::to_string(i));
      });
      FAIL();
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "7");
    }
  }
}

TEST(Parallel, ThreadCountFromEnvironment) {
  ::setenv("PWIG_THREADS", "3", 1);
  EXPECT_EQ(default_thread_count(), 3u);
  ::setenv("PWIG_THREADS", "zero", 1);
  EXPECT_GE(default_thread_count(), 1u);
  ::setenv("PWIG_THREADS", "-2", 1);
  EXPECT_GE(default_thread_count(), 1u);
  ::unsetenv("PWIG_THREADS");
}

TEST(TensorIo, RoundTripIsBitwise) {
  const Tensor t({2, 3}, {-0.0, 1e-310, 0.1, 1.0 / 3.0, -7.5, 12345678.9});
  const std::string doc = save_tensor(t);
  const Tensor back = load_tensor(doc);
  EXPECT_TRUE(bitwise_equal(back, t));
  EXPECT_TRUE(std::signbit(back[0]));
  EXPECT_EQ(save_tensor(back), doc);
}

TEST(TensorIo, RejectsMalformed) {
  EXPECT_THROW(load_tensor(R"({"shape":[2],"data":[1]})"), Error);
  EXPECT_THROW(load_tensor(R"({"shape":[2]})"), ParseError);
  EXPECT_THROW(load_tensor(R"({"shape":[1],"data":["x"]})"), ParseError);
  EXPECT_THROW(load_tensor("[1, 2"), ParseError);
}

TEST(TextFiles, MissingFileIsAnError) {
  EXPECT_THROW(read_text_file("/nonexistent/pwig/file.json"), Error);
}

}  // namespace
}  // namespace pwig
