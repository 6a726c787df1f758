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
#include <string>
#include <vector>

#include "seesaw/cli/artifacts.hpp"
#include "seesaw/dynamics.hpp"

namespace seesaw::cli {

inline constexpr std::uint64_t kDefaultSuiteSeed = 20240601;

struct SuiteOptions {
  std::uint64_t seed = kDefaultSuiteSeed;
  unsigned workers = 1;
  /// Needed by suites that deliberately evolve schedules failing the guard.
  bool allow_divergent = false;
  /// Forwarded to every exact evolution the suite performs.
  StepObserver observer;
};

struct SuiteResult {
  std::string name;
  Json summary;
  ArtifactSet artifacts;
  bool passed = false;
  std::vector<std::string> failures;
};

std::vector<std::string> builtin_suites();

/// Throws InvalidArgument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& options = {});

/// Serial-step ratio of the Seesaw schedule built from a T-step cosine run, per alpha.
Json speedup_report(std::uint64_t total_steps, const std::vector<double>& alphas);

} // namespace seesaw::cli
