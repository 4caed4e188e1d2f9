// Copyright 2026 The ECS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ecs/halfmoon.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "test_util.h"

namespace ecs {
namespace {

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int Count(const Dataset& d, const std::string& name, int begin, int end) {
  int t = 0;
  while (d.descriptor_names()[t] != name) ++t;
  int n = 0;
  for (int i = begin; i < end; ++i) n += d.descriptor(i, t);
  return n;
}

TEST(HalfmoonTest, DescriptorProportions) {
  ECS_ASSERT_OK_AND_ASSIGN(Halfmoon hm, GenerateHalfmoon({}));
  const Dataset& d = hm.dataset;
  ASSERT_EQ(d.num_instances(), 200);
  EXPECT_EQ(Count(d, "blue", 0, 100), 80);
  EXPECT_EQ(Count(d, "blue", 100, 200), 0);
  EXPECT_EQ(Count(d, "red", 100, 200), 80);
  EXPECT_EQ(Count(d, "red", 0, 100), 0);
  EXPECT_EQ(Count(d, "white", 0, 200), 40);
  EXPECT_EQ(Count(d, "square", 0, 200), 80);
  EXPECT_EQ(Count(d, "circle", 0, 200), 80);
  EXPECT_EQ(Count(d, "triangle", 0, 200), 40);
  EXPECT_EQ(Count(d, "small", 0, 200), 100);
  EXPECT_EQ(Count(d, "big", 0, 200), 100);
  for (int i = 0; i < 200; ++i) EXPECT_EQ(hm.truth[i], i / 100);
}

TEST(HalfmoonTest, MoonGeometry) {
  HalfmoonConfig config;
  config.noise = 0;
  ECS_ASSERT_OK_AND_ASSIGN(Halfmoon hm, GenerateHalfmoon(config));
  for (int i = 0; i < 100; ++i) {
    const double x = hm.dataset.feature(i, 0);
    const double y = hm.dataset.feature(i, 1);
    EXPECT_NEAR(x * x + y * y, 1.0, 1e-9);
    EXPECT_GE(y, -1e-12);
    const double u = hm.dataset.feature(100 + i, 0) - 1;
    const double v = hm.dataset.feature(100 + i, 1) - 0.5;
    EXPECT_NEAR(u * u + v * v, 1.0, 1e-9);
    EXPECT_LE(v, 1e-12);
  }
}

TEST(HalfmoonTest, ShippedDataMatchesDefaultSeed) {
  ECS_ASSERT_OK_AND_ASSIGN(Halfmoon hm, GenerateHalfmoon({}));
  const std::string dir = ::testing::TempDir() + "/hm_default";
  std::filesystem::create_directories(dir);
  ECS_ASSERT_OK(WriteHalfmoon(hm, dir));
  for (const char* f : {"features.csv", "descriptors.csv", "truth.txt"}) {
    EXPECT_EQ(ReadFile(dir + "/" + f),
              ReadFile(testing::DataPath(std::string("halfmoon/") + f)))
        << f;
  }
}

TEST(HalfmoonTest, SeedChangesDraw) {
  HalfmoonConfig other;
  other.seed = 35;
  ECS_ASSERT_OK_AND_ASSIGN(Halfmoon a, GenerateHalfmoon({}));
  ECS_ASSERT_OK_AND_ASSIGN(Halfmoon b, GenerateHalfmoon(other));
  EXPECT_FALSE(a.dataset == b.dataset);
}

}  // namespace
}  // namespace ecs
