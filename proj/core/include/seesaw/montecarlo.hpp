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

#include <cstddef>
#include <cstdint>
#include <vector>

#include "seesaw/nsgd.hpp"
#include "seesaw/problem.hpp"
#include "seesaw/schedules.hpp"

namespace seesaw {

struct McConfig {
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  /// Record step 0, every `record_every`-th step and the final step.
  std::uint64_t record_every = 1;
  std::size_t max_dimension = 4096;
  /// Worker threads; results do not depend on this value.
  unsigned workers = 1;
};

struct McRecord {
  std::uint64_t step = 0;
  double samples = 0.0;
  std::size_t phase = 0;
  double lr = 0.0;
  std::uint64_t batch = 0;
  double mean_excess_risk = 0.0;
  double stderr_excess_risk = 0.0;
};

struct McTrajectory {
  std::vector<McRecord> records;
  /// Integer batch actually used in each phase.
  std::vector<std::uint64_t> realized_batches;
  std::uint64_t trials = 0;
};

/// One planned optimizer step: applied step size and integer batch.
struct PlannedStep {
  double step_size;
  std::uint64_t batch;
  std::size_t phase;
  double lr;
};

/// Sample-level mini-batch SGD on x ~ N(0, diag(lambda)), y = <w*, x> + eps,
/// eps ~ N(0, sigma^2), following `plan`. Risk per trial is 1/2 sum lambda_i delta_i^2.
McTrajectory run_planned_trials(const ProblemInstance& problem, const std::vector<PlannedStep>& plan,
                                std::size_t num_phases, const McConfig& config);

/// Step plan of a schedule with batches rounded to integers.
std::vector<PlannedStep> sgd_plan(const ScheduleSpec& schedule);

/// Step plan of NSGD with deterministic population denominators. In
/// full_denominator mode the denominators come from an exact side run at the
/// realized batches.
std::vector<PlannedStep> nsgd_plan(const ProblemInstance& problem, const ScheduleSpec& schedule,
                                   NsgdMode mode);

McTrajectory run_sgd_trials(const ProblemInstance& problem, const ScheduleSpec& schedule,
                            const McConfig& config);

McTrajectory run_nsgd_trials(const ProblemInstance& problem, const ScheduleSpec& schedule,
                             const McConfig& config, NsgdMode mode);

} // namespace seesaw
