// Copyright 2026 The cointoss Authors
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

#include "cointoss/analysis.hpp"
#include "cointoss/errors.hpp"
#include "cointoss/protocol.hpp"
#include "cointoss/qstate.hpp"
#include "cointoss/registry.hpp"
#include "cointoss/report.hpp"
#include "cointoss/rng.hpp"
#include "cointoss/strategies.hpp"
