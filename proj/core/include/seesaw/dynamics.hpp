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
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "seesaw/problem.hpp"
#include "seesaw/schedules.hpp"

namespace seesaw {

/// Diagonal second moments of the eigenbasis iterate delta_t = w_t - w*.
///
/// `m` is diag(M_t); `m_bias` and `m_var` are the bias and variance iterates
/// (A^t m_0 and the accumulated noise injection); `u` is E[delta_t].
struct StateMoments {
  std::vector<double> m;
  std::vector<double> m_bias;
  std::vector<double> m_var;
  std::vector<double> u;
  std::uint64_t step = 0;
  double samples_consumed = 0.0;

  static StateMoments initial(const ProblemInstance& problem);
};

struct RiskDecomposition {
  double excess = 0.0;
  double bias = 0.0;
  double variance = 0.0;
};

/// One exact mini-batch SGD step on the moments:
///   m' = [(I - eta Lambda)^2 + (eta^2 / B)(Lambda^2 + lambda lambda^T)] m + (eta^2 sigma^2 / B) lambda
///   u' = (I - eta Lambda) u
/// `batch` may be any real >= 1.
StateMoments transition_apply(const StateMoments& state, double eta, double batch,
                              const ProblemInstance& problem);

/// In-place form of transition_apply.
void advance(StateMoments& state, double eta, double batch, const ProblemInstance& problem);

/// Excess risk 1/2 <lambda, m> and its bias / variance parts.
RiskDecomposition risk(const StateMoments& state, const ProblemInstance& problem);

struct TrajectoryRecord {
  std::uint64_t step = 0;
  double samples = 0.0;
  std::size_t phase = 0;
  double lr = 0.0;           // schedule learning rate of the phase
  double batch = 0.0;
  double effective_lr = 0.0; // step size actually applied (differs for NSGD)
  double excess_risk = 0.0;
  double bias_risk = 0.0;
  double variance_risk = 0.0;
  double dominance_ratio = std::numeric_limits<double>::quiet_NaN();
};

struct RiskTrajectory {
  /// Step 0 plus every step, decimated to every `decimation`-th step past
  /// `full_record_limit`. Phase ends are always kept.
  std::vector<TrajectoryRecord> records;
  /// State at the end of each phase; always recorded.
  std::vector<TrajectoryRecord> phase_ends;
  std::uint64_t serial_steps = 0;
  double total_samples = 0.0;

  OptimizerFamily family = OptimizerFamily::sgd;
  bool has_dominance_ratio = false;
  double min_dominance_ratio = std::numeric_limits<double>::quiet_NaN();
  GuardStatus guard = GuardStatus::ok;
  std::vector<std::string> warnings;

  const TrajectoryRecord& final_record() const { return records.back(); }
};

/// Called with the state after every step (and once with the initial state).
using StepObserver = std::function<void(const StateMoments&)>;

struct EvolveOptions {
  StepObserver observer;
  std::uint64_t full_record_limit = 1'000'000;
  std::uint64_t decimation = 10;
  /// Evolve schedules that fail the divergence guard, recording a warning.
  bool allow_divergent = false;
};

/// Per-step rule mapping (state, phase lr, phase batch) to the applied step size.
/// `monitor`, when set, returns the dominance ratio recorded for a state.
struct StepRule {
  std::function<double(const StateMoments&, double lr, double batch)> step_size;
  std::function<double(const StateMoments&, double batch)> monitor;
};

/// Phase-wise exact evolution under an arbitrary step rule. Phase k runs
/// schedule.phase_steps(k) steps at batch B_k.
RiskTrajectory evolve_with_rule(const ProblemInstance& problem, const ScheduleSpec& schedule,
                                const StepRule& rule, const EvolveOptions& options = {});

/// Exact expected-risk trajectory of mini-batch SGD.
RiskTrajectory evolve(const ProblemInstance& problem, const ScheduleSpec& schedule,
                      const EvolveOptions& options = {});

} // namespace seesaw
