// Copyright 2026 The gmiqcc Authors
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

#pragma once

#include "gmiqcc/bits.hpp"
#include "gmiqcc/errors.hpp"
#include "gmiqcc/exact.hpp"
#include "gmiqcc/gradient_screen.hpp"
#include "gmiqcc/growth_search.hpp"
#include "gmiqcc/hamiltonian.hpp"
#include "gmiqcc/interchange.hpp"
#include "gmiqcc/iqcc.hpp"
#include "gmiqcc/pauli.hpp"
#include "gmiqcc/selection.hpp"
#include "gmiqcc/trajectory.hpp"
