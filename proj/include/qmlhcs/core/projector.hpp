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

#include <cstddef>

#include "qmlhcs/core/types.hpp"

namespace qmlhcs {

/// Deterministic future generator: F = project(s, K), a K' x D matrix where
/// K' may exceed K when the projector augments its base branches.
class Projector {
 public:
  virtual ~Projector() = default;
  virtual FutureSet project(const StateVector& state, std::size_t branches) const = 0;
};

}  // namespace qmlhcs
