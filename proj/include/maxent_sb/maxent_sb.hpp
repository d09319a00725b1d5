// Copyright 2026 The maxent-sb Authors
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

// Umbrella header.

#include "maxent_sb/operator.hpp"
#include "maxent_sb/density.hpp"
#include "maxent_sb/matrix_io.hpp"
#include "maxent_sb/random.hpp"
#include "maxent_sb/models.hpp"
#include "maxent_sb/maxent.hpp"
#include "maxent_sb/dynamics.hpp"
#include "maxent_sb/bounds.hpp"
#include "maxent_sb/csv.hpp"
#include "maxent_sb/fit.hpp"
#include "maxent_sb/parallel.hpp"
#include "maxent_sb/experiments.hpp"
#include "maxent_sb/validation.hpp"
