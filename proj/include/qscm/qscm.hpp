// Copyright 2026 The qscmlab Authors
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

#include "qscm/analysis.hpp"
#include "qscm/complexity.hpp"
#include "qscm/error.hpp"
#include "qscm/extrapolation.hpp"
#include "qscm/ising.hpp"
#include "qscm/lanczos.hpp"
#include "qscm/parallel.hpp"
#include "qscm/propositions.hpp"
#include "qscm/quadrature.hpp"
#include "qscm/state.hpp"
#include "qscm/state_io.hpp"
#include "qscm/xxz.hpp"
