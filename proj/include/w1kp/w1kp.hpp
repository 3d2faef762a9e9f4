// Copyright 2026 The W1KP Kit Authors
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

#include "w1kp/calibration.hpp"
#include "w1kp/distance.hpp"
#include "w1kp/errors.hpp"
#include "w1kp/evaluation.hpp"
#include "w1kp/io.hpp"
#include "w1kp/mds.hpp"
#include "w1kp/normalization.hpp"
#include "w1kp/prompt.hpp"
#include "w1kp/random.hpp"
#include "w1kp/reusability.hpp"
#include "w1kp/spearman.hpp"
#include "w1kp/types.hpp"
#include "w1kp/variability.hpp"
