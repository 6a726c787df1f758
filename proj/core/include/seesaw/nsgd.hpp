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

#include <array>
#include <cstdint>

#include "seesaw/dynamics.hpp"

namespace seesaw {

/// E||g_t||^2 for a mini-batch gradient of size B, split into
///   additive   sigma^2 Tr(H) / B
///   covariance (2 <lambda^2, m> + Tr(H) <lambda, m>) / B
///   mean       (1 - 1/B) <lambda^2, u^2>
struct GradNormBreakdown {
  double additive_term = 0.0;
  double covariance_term = 0.0;
  double mean_term = 0.0;
  double total = 0.0;
};

GradNormBreakdown expected_grad_sq_norm(const StateMoments& state, const ProblemInstance& problem,
                                        double batch);

/// additive_term / total. Throws when total is zero.
double variance_dominance_ratio(const GradNormBreakdown& breakdown);

/// eta sqrt(B) / (sigma sqrt(Tr H)): the SGD step size that NSGD reduces to
/// when the additive noise dominates the gradient norm. Requires sigma > 0.
double effective_lr(double eta, double batch, const ProblemInstance& problem);

enum class NsgdMode { variance_dominated, full_denominator };

std::string_view to_string(NsgdMode mode) noexcept;

/// Exact NSGD evolution. The denominator is the population expectation
/// E||g_t||^2, which is deterministic given the exact state. Every record
/// carries the dominance ratio of its state; the trajectory keeps the minimum.
RiskTrajectory nsgd_evolve(const ProblemInstance& problem, const ScheduleSpec& schedule,
                           NsgdMode mode, const EvolveOptions& options = {});

struct NgdCycle {
  std::array<double, 4> final_points{};
  double amplitude = 0.0;
};

/// Sign-gradient descent on L(x) = h x^2 / 2: x <- x - eta h sign(x), with sign(0) = 0.
NgdCycle ngd_1d_cycle(double eta, double h, double x0, std::uint64_t steps);

} // namespace seesaw
