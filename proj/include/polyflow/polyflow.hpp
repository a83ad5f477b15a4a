// Copyright 2026 The Polyflow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Everything.

#pragma once

#include "polyflow/error.hpp"
#include "polyflow/flows.hpp"
#include "polyflow/graph.hpp"
#include "polyflow/io.hpp"
#include "polyflow/lp.hpp"
#include "polyflow/network.hpp"
#include "polyflow/oracles.hpp"
#include "polyflow/reduction.hpp"
#include "polyflow/relaxations.hpp"
#include "polyflow/rng.hpp"
#include "polyflow/rounding.hpp"
#include "polyflow/submodular.hpp"
