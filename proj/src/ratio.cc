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

#include "ecs/ratio.h"

#include <cmath>
#include <string>

#include "absl/strings/str_format.h"

namespace ecs {

Ratio Ratio::FromDouble(double value) {
  return FromParts(
      static_cast<int64_t>(std::llround(value * static_cast<double>(kDenominator))));
}

std::string Ratio::ToString() const {
  return absl::StrFormat("%g", ToDouble());
}

}  // namespace ecs
