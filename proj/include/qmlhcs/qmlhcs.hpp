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

// Umbrella header for the whole library.

#include "qmlhcs/core/backend.hpp"
#include "qmlhcs/core/error.hpp"
#include "qmlhcs/core/projector.hpp"
#include "qmlhcs/core/random.hpp"
#include "qmlhcs/core/registry.hpp"
#include "qmlhcs/core/types.hpp"

#include "qmlhcs/backend/counts.hpp"
#include "qmlhcs/backend/engines.hpp"
#include "qmlhcs/backend/statevector.hpp"

#include "qmlhcs/projectors/anticipator.hpp"
#include "qmlhcs/projectors/linear.hpp"

#include "qmlhcs/hypercausal/graph.hpp"
#include "qmlhcs/hypercausal/graph_io.hpp"
#include "qmlhcs/hypercausal/node.hpp"
#include "qmlhcs/hypercausal/policy.hpp"

#include "qmlhcs/evaluation/losses.hpp"
#include "qmlhcs/evaluation/metrics.hpp"

#include "qmlhcs/optim/optimizers.hpp"

#include "qmlhcs/runtime/callbacks.hpp"
#include "qmlhcs/runtime/schedule.hpp"
#include "qmlhcs/runtime/telemetry.hpp"

#include "qmlhcs/experiment/config.hpp"
#include "qmlhcs/experiment/drift.hpp"
#include "qmlhcs/experiment/experiment.hpp"
#include "qmlhcs/experiment/io.hpp"
#include "qmlhcs/experiment/summary.hpp"
