// Copyright 2026 The qmlhcs Authors
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
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "qmlhcs/core/error.hpp"

namespace qmlhcs {

/// Linear depth ramp from `start` to `end` over `horizon` epochs.
struct DepthSchedule {
  std::size_t start = 1;
  std::size_t end = 5;
  std::size_t horizon = 300;

  void validate() const {
    detail::require(start >= 1 && end >= 1, ErrorKind::InvalidConfig, "depth endpoints must be >= 1");
    detail::require(horizon >= 1, ErrorKind::InvalidConfig, "depth horizon must be >= 1");
  }
};

/// round(start + (end - start) * clip(e / E, 0, 1)), rounding halves away
/// from zero.
inline std::size_t depth_at(const DepthSchedule& schedule, std::int64_t epoch) {
  schedule.validate();
  const double fraction = std::clamp(static_cast<double>(epoch) / static_cast<double>(schedule.horizon), 0.0, 1.0);
  const double start = static_cast<double>(schedule.start);
  const double end = static_cast<double>(schedule.end);
  return static_cast<std::size_t>(std::round(start + (end - start) * fraction));
}

}  // namespace qmlhcs
