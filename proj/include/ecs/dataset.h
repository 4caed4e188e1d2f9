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

#ifndef ECS_DATASET_H_
#define ECS_DATASET_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecs/bitset.h"

namespace ecs {

// Two-view dataset: a numeric feature view used for clustering and a Boolean
// descriptor view used for explanations. Both views share the row indexing.
class Dataset {
 public:
  Dataset() = default;

  // Validates shapes and descriptor columns. Every descriptor column must
  // contain at least one 1 and one 0.
  static absl::StatusOr<Dataset> Create(
      std::vector<std::string> instance_ids,
      std::vector<std::string> feature_names,
      std::vector<std::vector<double>> features,
      std::vector<std::string> descriptor_names,
      std::vector<std::vector<bool>> descriptors);

  int num_instances() const { return static_cast<int>(instance_ids_.size()); }
  int num_features() const { return static_cast<int>(feature_names_.size()); }
  int num_descriptors() const {
    return static_cast<int>(descriptor_names_.size());
  }

  const std::vector<std::string>& instance_ids() const { return instance_ids_; }
  const std::vector<std::string>& feature_names() const {
    return feature_names_;
  }
  const std::vector<std::string>& descriptor_names() const {
    return descriptor_names_;
  }

  // Row-major feature matrix.
  const std::vector<std::vector<double>>& features() const { return features_; }
  double feature(int row, int col) const { return features_[row][col]; }

  bool descriptor(int row, int col) const { return rows_[row].Test(col); }
  // Descriptor row of an instance as a bitset over descriptors.
  const Bitset& descriptor_row(int row) const { return rows_[row]; }
  // Instances having descriptor `col` as a bitset over instances.
  const Bitset& descriptor_column(int col) const { return columns_[col]; }

  // Instances covered by `pattern` (all of its descriptors set).
  Bitset CoveredInstances(const std::vector<int>& pattern) const;

  // Row index for an instance id, or -1.
  int FindInstance(const std::string& id) const;
  int FindFeature(const std::string& name) const;

  // Returns a copy with every feature column z-scored. Constant columns are
  // centred but left unscaled.
  Dataset Standardized() const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.instance_ids_ == b.instance_ids_ &&
           a.feature_names_ == b.feature_names_ &&
           a.features_ == b.features_ &&
           a.descriptor_names_ == b.descriptor_names_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<std::string> instance_ids_;
  std::vector<std::string> feature_names_;
  std::vector<std::vector<double>> features_;
  std::vector<std::string> descriptor_names_;
  std::vector<Bitset> rows_;
  std::vector<Bitset> columns_;
};

// Atomic coverage predicate: true iff every descriptor of `pattern` is set for
// `instance`. The empty pattern covers everything.
bool Cover(const std::vector<int>& pattern, int instance,
           const Dataset& dataset);

enum class BinarizationScheme { kMedian2, kQuantile4, kOneHot };

struct BinarizationSpec {
  int column = 0;
  BinarizationScheme scheme = BinarizationScheme::kMedian2;
};

// Parses "col:scheme" where col is a feature name or index and scheme is one
// of median, quantile, onehot.
absl::StatusOr<BinarizationSpec> ParseBinarizationSpec(
    const std::string& text, const std::vector<std::string>& feature_names);

// Appends descriptor columns derived from a numeric feature column.
//
// median:   <name>_m1 (value < median), <name>_m2 (value >= median).
// quantile: <name>1..<name>4 over the quartiles (linear interpolation
//           between order statistics), each interval closed at its lower
//           cut point.
// onehot:   <name>=<value> per distinct value, in increasing value order.
absl::StatusOr<Dataset> Binarize(const Dataset& dataset,
                                 const BinarizationSpec& spec);

// CSV loading. The header row gives column names; a leading column named
// "id" holds instance ids, otherwise ids are the 0-based row numbers.
// Descriptor cells must be 0 or 1. Errors carry the file name and line.
absl::StatusOr<Dataset> LoadDataset(const std::string& feature_file,
                                    const std::string& descriptor_file);

// Loads only the feature view; the descriptor view is left empty so that
// it can be populated with Binarize.
absl::StatusOr<Dataset> LoadFeaturesOnly(const std::string& feature_file);

absl::Status SaveDataset(const Dataset& dataset,
                         const std::string& feature_file,
                         const std::string& descriptor_file);

}  // namespace ecs

#endif  // ECS_DATASET_H_
