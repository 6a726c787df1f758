/*
 * Copyright (c) 2026, The Seesaw Lab Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seesaw/cli/artifacts.hpp"
#include "seesaw/cli/config.hpp"

namespace seesaw::cli {

struct RunOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<Engine> engine;
  std::optional<unsigned> workers;
  bool allow_divergent = false;
  /// Fail with a ConfigError when run.compare is absent.
  bool require_compare = false;
};

struct ExperimentResult {
  ArtifactSet artifacts;
  Json summary;
  std::vector<std::string> warnings;
};

/// Runs every schedule through the selected engines and the optional
/// comparison. Throws GuardFailure for a divergent schedule unless allowed.
ExperimentResult run_experiment(const ExperimentConfig& config, const RunOverrides& overrides = {});

} // namespace seesaw::cli
