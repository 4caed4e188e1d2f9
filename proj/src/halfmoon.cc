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

#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "ecs/rng.h"

namespace ecs {
namespace {

enum Descriptor { kBlue, kRed, kWhite, kSquare, kCircle, kTriangle, kSmall, kBig };

// Marks the first count[j] entries of a random permutation of `rows` with
// descriptor first + j.
void Attribute(std::vector<int> rows, const std::vector<int>& counts,
               int first, Rng& rng, std::vector<std::vector<bool>>& out) {
  rng.Shuffle(rows.begin(), rows.end());
  size_t pos = 0;
  for (size_t j = 0; j < counts.size(); ++j) {
    for (int n = 0; n < counts[j]; ++n) out[rows[pos++]][first + j] = true;
  }
}

}  // namespace

absl::StatusOr<Halfmoon> GenerateHalfmoon(const HalfmoonConfig& config) {
  const int m = config.points_per_moon;
  if (m < 2) {
    return absl::InvalidArgumentError("halfmoon: need at least 2 points per moon");
  }
  if (!(config.noise >= 0)) {
    return absl::InvalidArgumentError("halfmoon: noise must be >= 0");
  }
  const int n = 2 * m;
  Rng rng(DeriveSeed(config.seed, {0}));
  std::vector<std::vector<double>> features(n, std::vector<double>(2));
  for (int i = 0; i < m; ++i) {
    const double t = std::numbers::pi * i / (m - 1);
    features[i] = {std::cos(t), std::sin(t)};
    features[m + i] = {1 - std::cos(t), 1 - std::sin(t) - 0.5};
  }
  for (auto& row : features) {
    for (double& x : row) x += rng.Normal(0, config.noise);
  }

  Rng draw(DeriveSeed(config.seed, {1}));
  std::vector<std::vector<bool>> desc(n, std::vector<bool>(8, false));
  std::vector<int> upper(m);
  std::iota(upper.begin(), upper.end(), 0);
  std::vector<int> lower(m);
  std::iota(lower.begin(), lower.end(), m);
  std::vector<int> all(n);
  std::iota(all.begin(), all.end(), 0);
  const int colored = static_cast<int>(std::lround(0.8 * m));
  // Colors: own color then white, per moon.
  Attribute(upper, {colored, 0, m - colored}, kBlue, draw, desc);
  Attribute(lower, {0, colored, m - colored}, kBlue, draw, desc);
  const int squares = static_cast<int>(std::lround(0.4 * n));
  Attribute(all, {squares, squares, n - 2 * squares}, kSquare, draw, desc);
  Attribute(all, {n / 2, n - n / 2}, kSmall, draw, desc);

  std::vector<std::string> ids(n);
  for (int i = 0; i < n; ++i) ids[i] = absl::StrCat(i);
  absl::StatusOr<Dataset> dataset = Dataset::Create(
      ids, {"x", "y"}, std::move(features),
      {"blue", "red", "white", "square", "circle", "triangle", "small", "big"},
      std::move(desc));
  if (!dataset.ok()) return dataset.status();
  Halfmoon out;
  out.dataset = *std::move(dataset);
  out.truth.assign(n, 0);
  for (int i = m; i < n; ++i) out.truth[i] = 1;
  return out;
}

absl::Status WriteHalfmoon(const Halfmoon& halfmoon,
                           const std::string& directory) {
  absl::Status s = SaveDataset(halfmoon.dataset, directory + "/features.csv",
                               directory + "/descriptors.csv");
  if (!s.ok()) return s;
  const std::string path = directory + "/truth.txt";
  std::ofstream out(path);
  if (!out) return absl::UnavailableError(absl::StrCat("cannot write ", path));
  for (int label = 0; label < 2; ++label) {
    std::vector<std::string> ids;
    for (int i = 0; i < halfmoon.dataset.num_instances(); ++i) {
      if (halfmoon.truth[i] == label) {
        ids.push_back(halfmoon.dataset.instance_ids()[i]);
      }
    }
    out << absl::StrJoin(ids, " ") << "\n";
  }
  return out ? absl::OkStatus()
             : absl::UnavailableError(absl::StrCat("cannot write ", path));
}

}  // namespace ecs
