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

#ifndef ECS_HALFMOON_H_
#define ECS_HALFMOON_H_

#include <cstdint>
#include <string>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecs/dataset.h"
#include "ecs/pool.h"

namespace ecs {

// Seed whose descriptor draw gives 51 big points in the upper moon and at
// least 41 big points of each moon's own color.
inline constexpr uint64_t kDefaultHalfmoonSeed = 34;

struct HalfmoonConfig {
  int points_per_moon = 100;
  double noise = 0.05;
  uint64_t seed = kDefaultHalfmoonSeed;
};

// Two interleaved crescents (upper moon first, then lower moon) with a
// random Boolean descriptor view:
//   colors: 80% of each moon blue (upper) or red (lower), the rest white;
//   shapes: 40% square, 40% circle, 20% triangle over all points;
//   sizes:  50% small, 50% big over all points.
// Proportions are applied as exact counts over random permutations.
struct Halfmoon {
  Dataset dataset;
  Labels truth;  // 0 = upper moon, 1 = lower moon
};

absl::StatusOr<Halfmoon> GenerateHalfmoon(const HalfmoonConfig& config);

// Writes features.csv, descriptors.csv and truth.txt (one line of instance
// ids per moon) into `directory`, which must exist.
absl::Status WriteHalfmoon(const Halfmoon& halfmoon,
                           const std::string& directory);

}  // namespace ecs

#endif  // ECS_HALFMOON_H_
