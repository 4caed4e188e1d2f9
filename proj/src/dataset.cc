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

#include "ecs/dataset.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "absl/strings/strip.h"
#include "absl/strings/ascii.h"

namespace ecs {

absl::StatusOr<Dataset> Dataset::Create(
    std::vector<std::string> instance_ids,
    std::vector<std::string> feature_names,
    std::vector<std::vector<double>> features,
    std::vector<std::string> descriptor_names,
    std::vector<std::vector<bool>> descriptors) {
  const size_t n = instance_ids.size();
  if (n == 0) return absl::InvalidArgumentError("dataset has no instances");
  if (features.size() != n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "feature view has %d rows, expected %d", features.size(), n));
  }
  if (descriptors.size() != n) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "descriptor view has %d rows, expected %d", descriptors.size(), n));
  }
  {
    std::set<std::string> seen;
    for (const auto& id : instance_ids) {
      if (!seen.insert(id).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate instance id '", id, "'"));
      }
    }
  }
  {
    std::set<std::string> seen;
    for (const auto& name : descriptor_names) {
      if (!seen.insert(name).second) {
        return absl::InvalidArgumentError(
            absl::StrCat("duplicate descriptor name '", name, "'"));
      }
    }
  }
  const size_t nf = feature_names.size();
  const size_t nd = descriptor_names.size();
  for (size_t i = 0; i < n; ++i) {
    if (features[i].size() != nf) {
      return absl::InvalidArgumentError(
          absl::StrFormat("feature row %d has %d values, expected %d", i,
                          features[i].size(), nf));
    }
    for (double v : features[i]) {
      if (!std::isfinite(v)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("feature row %d has a non-finite value", i));
      }
    }
    if (descriptors[i].size() != nd) {
      return absl::InvalidArgumentError(
          absl::StrFormat("descriptor row %d has %d values, expected %d", i,
                          descriptors[i].size(), nd));
    }
  }

  Dataset d;
  d.rows_.assign(n, Bitset(nd));
  d.columns_.assign(nd, Bitset(n));
  for (size_t i = 0; i < n; ++i) {
    for (size_t t = 0; t < nd; ++t) {
      if (descriptors[i][t]) {
        d.rows_[i].Set(t);
        d.columns_[t].Set(i);
      }
    }
  }
  for (size_t t = 0; t < nd; ++t) {
    const size_t ones = d.columns_[t].Count();
    if (ones == 0 || ones == n) {
      return absl::FailedPreconditionError(absl::StrCat(
          "descriptor '", descriptor_names[t], "' is constant (all ",
          ones == 0 ? "0" : "1", "); remove it from the descriptor view"));
    }
  }
  d.instance_ids_ = std::move(instance_ids);
  d.feature_names_ = std::move(feature_names);
  d.features_ = std::move(features);
  d.descriptor_names_ = std::move(descriptor_names);
  return d;
}

Bitset Dataset::CoveredInstances(const std::vector<int>& pattern) const {
  Bitset out(instance_ids_.size());
  out.SetAll();
  for (int t : pattern) out &= columns_[t];
  return out;
}

int Dataset::FindInstance(const std::string& id) const {
  auto it = std::find(instance_ids_.begin(), instance_ids_.end(), id);
  return it == instance_ids_.end()
             ? -1
             : static_cast<int>(it - instance_ids_.begin());
}

int Dataset::FindFeature(const std::string& name) const {
  auto it = std::find(feature_names_.begin(), feature_names_.end(), name);
  return it == feature_names_.end()
             ? -1
             : static_cast<int>(it - feature_names_.begin());
}

Dataset Dataset::Standardized() const {
  Dataset out = *this;
  const int n = num_instances();
  for (int j = 0; j < num_features(); ++j) {
    double mean = 0;
    for (int i = 0; i < n; ++i) mean += features_[i][j];
    mean /= n;
    double var = 0;
    for (int i = 0; i < n; ++i) {
      const double d = features_[i][j] - mean;
      var += d * d;
    }
    const double sd = std::sqrt(var / n);
    for (int i = 0; i < n; ++i) {
      const double centred = features_[i][j] - mean;
      out.features_[i][j] = sd > 0 ? centred / sd : centred;
    }
  }
  return out;
}

bool Cover(const std::vector<int>& pattern, int instance,
           const Dataset& dataset) {
  for (int t : pattern) {
    if (!dataset.descriptor(instance, t)) return false;
  }
  return true;
}

absl::StatusOr<BinarizationSpec> ParseBinarizationSpec(
    const std::string& text, const std::vector<std::string>& feature_names) {
  const size_t colon = text.rfind(':');
  if (colon == std::string::npos) {
    return absl::InvalidArgumentError(
        absl::StrCat("binarization spec '", text, "' is not col:scheme"));
  }
  const std::string col = std::string(absl::StripAsciiWhitespace(text.substr(0, colon)));
  const std::string scheme =
      absl::AsciiStrToLower(absl::StripAsciiWhitespace(text.substr(colon + 1)));
  BinarizationSpec spec;
  if (scheme == "median") {
    spec.scheme = BinarizationScheme::kMedian2;
  } else if (scheme == "quantile" || scheme == "quartile") {
    spec.scheme = BinarizationScheme::kQuantile4;
  } else if (scheme == "onehot" || scheme == "one-hot") {
    spec.scheme = BinarizationScheme::kOneHot;
  } else {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown binarization scheme '", scheme, "'"));
  }
  auto it = std::find(feature_names.begin(), feature_names.end(), col);
  if (it != feature_names.end()) {
    spec.column = static_cast<int>(it - feature_names.begin());
    return spec;
  }
  int index;
  if (!absl::SimpleAtoi(col, &index)) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown feature column '", col, "'"));
  }
  spec.column = index;
  return spec;
}

namespace {

// Quantile q = numer/denom of sorted values, interpolating linearly between
// the order statistics at positions floor(h) and ceil(h), h = q * (n - 1).
// The 2/4 quantile is the usual median.
double Quantile(const std::vector<double>& sorted, int numer, int denom) {
  const size_t n = sorted.size();
  const size_t scaled = static_cast<size_t>(numer) * (n - 1);
  const size_t lo = scaled / denom;
  const size_t rem = scaled % denom;
  if (rem == 0 || lo + 1 >= n) return sorted[lo];
  const double frac = static_cast<double>(rem) / denom;
  return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

std::string FormatValue(double v) {
  if (v == std::floor(v) && std::abs(v) < 1e15) {
    return absl::StrCat(static_cast<int64_t>(v));
  }
  return absl::StrCat(v);
}

}  // namespace

absl::StatusOr<Dataset> Binarize(const Dataset& dataset,
                                 const BinarizationSpec& spec) {
  if (spec.column < 0 || spec.column >= dataset.num_features()) {
    return absl::OutOfRangeError(
        absl::StrFormat("binarization column %d out of range [0,%d)",
                        spec.column, dataset.num_features()));
  }
  const int n = dataset.num_instances();
  const std::string& name = dataset.feature_names()[spec.column];
  std::vector<double> values(n);
  for (int i = 0; i < n; ++i) values[i] = dataset.feature(i, spec.column);
  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());

  // Bins are [cut_k, cut_{k+1}); a value equal to a cut point goes up.
  std::vector<double> cuts;
  std::vector<std::string> names;
  std::vector<int> bin(n);
  switch (spec.scheme) {
    case BinarizationScheme::kMedian2:
      cuts = {Quantile(sorted, 1, 2)};
      names = {name + "_m1", name + "_m2"};
      break;
    case BinarizationScheme::kQuantile4:
      cuts = {Quantile(sorted, 1, 4), Quantile(sorted, 2, 4),
              Quantile(sorted, 3, 4)};
      names = {name + "1", name + "2", name + "3", name + "4"};
      break;
    case BinarizationScheme::kOneHot: {
      std::vector<double> distinct = sorted;
      distinct.erase(std::unique(distinct.begin(), distinct.end()),
                     distinct.end());
      if (distinct.size() < 2) {
        return absl::FailedPreconditionError(absl::StrCat(
            "column '", name, "' has fewer than 2 distinct values"));
      }
      for (double v : distinct) names.push_back(name + "=" + FormatValue(v));
      for (int i = 0; i < n; ++i) {
        bin[i] = static_cast<int>(
            std::lower_bound(distinct.begin(), distinct.end(), values[i]) -
            distinct.begin());
      }
      break;
    }
  }
  if (spec.scheme != BinarizationScheme::kOneHot) {
    for (int i = 0; i < n; ++i) {
      bin[i] = static_cast<int>(
          std::upper_bound(cuts.begin(), cuts.end(), values[i]) - cuts.begin());
    }
  }
  std::vector<int> counts(names.size(), 0);
  for (int b : bin) ++counts[b];
  for (size_t b = 0; b < names.size(); ++b) {
    if (counts[b] == 0) {
      return absl::FailedPreconditionError(absl::StrCat(
          "column '", name, "' has fewer distinct values than bins (bin '",
          names[b], "' is empty)"));
    }
  }

  std::vector<std::string> descriptor_names = dataset.descriptor_names();
  std::vector<std::vector<bool>> descriptors(n);
  for (int i = 0; i < n; ++i) {
    descriptors[i].reserve(dataset.num_descriptors() + names.size());
    for (int t = 0; t < dataset.num_descriptors(); ++t) {
      descriptors[i].push_back(dataset.descriptor(i, t));
    }
    for (size_t b = 0; b < names.size(); ++b) {
      descriptors[i].push_back(static_cast<int>(b) == bin[i]);
    }
  }
  descriptor_names.insert(descriptor_names.end(), names.begin(), names.end());
  return Dataset::Create(dataset.instance_ids(), dataset.feature_names(),
                         dataset.features(), std::move(descriptor_names),
                         std::move(descriptors));
}

namespace {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<int> lines;  // 1-based source line of each row
};

std::string Unquote(absl::string_view cell) {
  cell = absl::StripAsciiWhitespace(cell);
  if (cell.size() >= 2 && cell.front() == '"' && cell.back() == '"') {
    cell = cell.substr(1, cell.size() - 2);
  }
  return std::string(cell);
}

absl::StatusOr<CsvTable> ReadCsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) return absl::NotFoundError(absl::StrCat(path, ": cannot open file"));
  CsvTable table;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (absl::StripAsciiWhitespace(line).empty()) continue;
    std::vector<std::string> cells;
    for (absl::string_view c : absl::StrSplit(line, ',')) {
      cells.push_back(Unquote(c));
    }
    if (!have_header) {
      table.header = std::move(cells);
      have_header = true;
      continue;
    }
    if (cells.size() != table.header.size()) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s:%d: expected %d cells, found %d", path, lineno,
          table.header.size(), cells.size()));
    }
    table.rows.push_back(std::move(cells));
    table.lines.push_back(lineno);
  }
  if (!have_header || table.rows.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": empty file"));
  }
  return table;
}

bool HasIdColumn(const CsvTable& t) {
  return !t.header.empty() && absl::AsciiStrToLower(t.header[0]) == "id";
}

std::vector<std::string> IdsOf(const CsvTable& t) {
  std::vector<std::string> ids;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    ids.push_back(HasIdColumn(t) ? t.rows[i][0] : absl::StrCat(i));
  }
  return ids;
}

absl::Status ParseFeatures(const std::string& path, const CsvTable& t,
                           std::vector<std::string>* names,
                           std::vector<std::vector<double>>* values) {
  const size_t first = HasIdColumn(t) ? 1 : 0;
  names->assign(t.header.begin() + first, t.header.end());
  values->clear();
  for (size_t r = 0; r < t.rows.size(); ++r) {
    std::vector<double> row;
    for (size_t c = first; c < t.rows[r].size(); ++c) {
      double v;
      if (t.rows[r][c].empty()) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "%s:%d: missing value in column '%s'", path, t.lines[r],
            t.header[c]));
      }
      if (!absl::SimpleAtod(t.rows[r][c], &v) || !std::isfinite(v)) {
        return absl::InvalidArgumentError(
            absl::StrFormat("%s:%d: non-numeric value '%s' in column '%s'",
                            path, t.lines[r], t.rows[r][c], t.header[c]));
      }
      row.push_back(v);
    }
    values->push_back(std::move(row));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Dataset> LoadFeaturesOnly(const std::string& feature_file) {
  absl::StatusOr<CsvTable> ft = ReadCsv(feature_file);
  if (!ft.ok()) return ft.status();
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;
  if (absl::Status s = ParseFeatures(feature_file, *ft, &names, &values);
      !s.ok()) {
    return s;
  }
  const size_t n = values.size();
  return Dataset::Create(IdsOf(*ft), std::move(names), std::move(values), {},
                         std::vector<std::vector<bool>>(n));
}

absl::StatusOr<Dataset> LoadDataset(const std::string& feature_file,
                                    const std::string& descriptor_file) {
  absl::StatusOr<CsvTable> ft = ReadCsv(feature_file);
  if (!ft.ok()) return ft.status();
  absl::StatusOr<CsvTable> dt = ReadCsv(descriptor_file);
  if (!dt.ok()) return dt.status();
  if (ft->rows.size() != dt->rows.size()) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "row-count mismatch: %s has %d rows but %s has %d rows (line %d)",
        feature_file, ft->rows.size(), descriptor_file, dt->rows.size(),
        std::min(ft->lines.back(), dt->lines.back()) + 1));
  }
  std::vector<std::string> ids = IdsOf(*ft);
  if (HasIdColumn(*ft) && HasIdColumn(*dt)) {
    for (size_t r = 0; r < dt->rows.size(); ++r) {
      if (dt->rows[r][0] != ids[r]) {
        return absl::InvalidArgumentError(absl::StrFormat(
            "%s:%d: instance id '%s' does not match '%s' in %s",
            descriptor_file, dt->lines[r], dt->rows[r][0], ids[r],
            feature_file));
      }
    }
  }

  std::vector<std::string> feature_names;
  std::vector<std::vector<double>> features;
  if (absl::Status s =
          ParseFeatures(feature_file, *ft, &feature_names, &features);
      !s.ok()) {
    return s;
  }

  const size_t first = HasIdColumn(*dt) ? 1 : 0;
  std::vector<std::string> descriptor_names(dt->header.begin() + first,
                                            dt->header.end());
  std::vector<std::vector<bool>> descriptors;
  for (size_t r = 0; r < dt->rows.size(); ++r) {
    std::vector<bool> row;
    for (size_t c = first; c < dt->rows[r].size(); ++c) {
      const std::string& cell = dt->rows[r][c];
      if (cell == "1") {
        row.push_back(true);
      } else if (cell == "0") {
        row.push_back(false);
      } else {
        return absl::InvalidArgumentError(absl::StrFormat(
            "%s:%d: non-Boolean descriptor value '%s' in column '%s'",
            descriptor_file, dt->lines[r], cell, dt->header[c]));
      }
    }
    descriptors.push_back(std::move(row));
  }
  return Dataset::Create(std::move(ids), std::move(feature_names),
                         std::move(features), std::move(descriptor_names),
                         std::move(descriptors));
}

absl::Status SaveDataset(const Dataset& dataset,
                         const std::string& feature_file,
                         const std::string& descriptor_file) {
  std::ofstream f(feature_file);
  if (!f) return absl::UnavailableError(absl::StrCat(feature_file, ": cannot write"));
  f << "id";
  for (const auto& name : dataset.feature_names()) f << ',' << name;
  f << '\n';
  for (int i = 0; i < dataset.num_instances(); ++i) {
    f << dataset.instance_ids()[i];
    for (int j = 0; j < dataset.num_features(); ++j) {
      f << ',' << absl::StrFormat("%.17g", dataset.feature(i, j));
    }
    f << '\n';
  }
  std::ofstream d(descriptor_file);
  if (!d) {
    return absl::UnavailableError(absl::StrCat(descriptor_file, ": cannot write"));
  }
  d << "id";
  for (const auto& name : dataset.descriptor_names()) d << ',' << name;
  d << '\n';
  for (int i = 0; i < dataset.num_instances(); ++i) {
    d << dataset.instance_ids()[i];
    for (int t = 0; t < dataset.num_descriptors(); ++t) {
      d << ',' << (dataset.descriptor(i, t) ? '1' : '0');
    }
    d << '\n';
  }
  if (!f || !d) return absl::DataLossError("short write while saving dataset");
  return absl::OkStatus();
}

}  // namespace ecs
