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

#ifndef ECS_RATIO_H_
#define ECS_RATIO_H_

#include <cstdint>
#include <string>

namespace ecs {

// A threshold in [0,1] held as an exact fraction over a fixed denominator so
// that count-versus-ratio comparisons are decided in integer arithmetic.
// Values are quantized to 1e-6 on construction.
class Ratio {
 public:
  static constexpr int64_t kDenominator = 1'000'000;

  constexpr Ratio() = default;
  static Ratio FromDouble(double value);
  static constexpr Ratio FromParts(int64_t millionths) {
    Ratio r;
    r.num_ = millionths;
    return r;
  }

  double ToDouble() const {
    return static_cast<double>(num_) / static_cast<double>(kDenominator);
  }
  int64_t numerator() const { return num_; }
  bool InUnitInterval() const { return num_ >= 0 && num_ <= kDenominator; }

  // count >= ratio * total
  static bool CountAtLeast(int64_t count, Ratio r, int64_t total) {
    return static_cast<__int128>(count) * kDenominator >=
           static_cast<__int128>(r.num_) * total;
  }
  // count > ratio * total
  static bool CountAbove(int64_t count, Ratio r, int64_t total) {
    return static_cast<__int128>(count) * kDenominator >
           static_cast<__int128>(r.num_) * total;
  }
  // count < ratio * total
  static bool CountBelow(int64_t count, Ratio r, int64_t total) {
    return !CountAtLeast(count, r, total);
  }
  // count <= ratio * total
  static bool CountAtMost(int64_t count, Ratio r, int64_t total) {
    return !CountAbove(count, r, total);
  }
  // Smallest integer count with count >= ratio * total.
  static int64_t CeilTimes(Ratio r, int64_t total) {
    __int128 prod = static_cast<__int128>(r.num_) * total;
    return static_cast<int64_t>((prod + kDenominator - 1) / kDenominator);
  }

  std::string ToString() const;

  friend bool operator==(Ratio, Ratio) = default;
  friend auto operator<=>(Ratio, Ratio) = default;

 private:
  int64_t num_ = 0;
};

}  // namespace ecs

#endif  // ECS_RATIO_H_
