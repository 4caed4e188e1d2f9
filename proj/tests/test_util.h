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

#ifndef ECS_TESTS_TEST_UTIL_H_
#define ECS_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecs/dataset.h"
#include "ecs/miner.h"
#include "ecs/rng.h"
#include "ecs/solver.h"

#define ECS_ASSERT_OK(expr)                              \
  do {                                                   \
    const absl::Status _st = (expr);                     \
    ASSERT_TRUE(_st.ok()) << _st;                        \
  } while (0)

#define ECS_ASSERT_OK_AND_ASSIGN_IMPL(tmp, lhs, expr)    \
  auto tmp = (expr);                                     \
  ASSERT_TRUE(tmp.ok()) << tmp.status();                 \
  lhs = *std::move(tmp)

#define ECS_CONCAT_INNER(a, b) a##b
#define ECS_CONCAT(a, b) ECS_CONCAT_INNER(a, b)
#define ECS_ASSERT_OK_AND_ASSIGN(lhs, expr) \
  ECS_ASSERT_OK_AND_ASSIGN_IMPL(ECS_CONCAT(_statusor_, __LINE__), lhs, expr)

namespace ecs::testing {

// Dataset from literal rows. Ids are row numbers; features default to a
// single zero column when `features` is empty.
absl::StatusOr<Dataset> MakeDataset(
    const std::vector<std::vector<int>>& descriptors,
    std::vector<std::vector<double>> features = {},
    std::vector<std::string> descriptor_names = {});

Bitset MakeBitset(int n, const std::vector<int>& members);

// Random solver instance: V clusters over N instances drawn from a few
// random partitions plus random subsets, a pattern universe of short random
// itemsets over a random descriptor view, and up to `max_candidates` patterns
// per cluster.
struct RandomInstanceOptions {
  int max_instances = 60;
  int max_clusters = 12;
  int max_candidates = 5;
  int num_descriptors = 7;
};
IcsInstance RandomInstance(Rng& rng, const RandomInstanceOptions& options);

// Random solver config touching every constraint family with some
// probability; never combines completeness with min-explanation-length.
SolverConfig RandomConfig(Rng& rng, const IcsInstance& instance);

// Describes a config in one line, for failure messages.
std::string DescribeConfig(const SolverConfig& config);

// Path of a file under the source tree's data/ directory.
std::string DataPath(const std::string& relative);

}  // namespace ecs::testing

#endif  // ECS_TESTS_TEST_UTIL_H_
