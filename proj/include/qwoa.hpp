// Copyright 2026 The qwoa-sim Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file qwoa.hpp
 * Umbrella header. The Eigen-based reference code lives in oracles.hpp and
 * is not included here.
 */
#pragma once

#include "qwoa/analysis.hpp"
#include "qwoa/circuits.hpp"
#include "qwoa/engine.hpp"
#include "qwoa/error.hpp"
#include "qwoa/instances.hpp"
#include "qwoa/io.hpp"
#include "qwoa/mixers.hpp"
#include "qwoa/problems.hpp"
#include "qwoa/solution_space.hpp"
#include "qwoa/statevector.hpp"
