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
#include <limits>
#include <string>
#include <vector>

#include "seesaw/dynamics.hpp"
#include "seesaw/nsgd.hpp"
#include "seesaw/problem.hpp"
#include "seesaw/schedules.hpp"

namespace seesaw {

/// Observed constant of the bounded-risk assumption R(w_t) <= c sigma^2 for t > t0.
/// R is the total population risk (excess + sigma^2 / 2).
struct Assumption1Result {
  double observed_c = 0.0;
  /// Excess risk identically zero after t0; reported as c = 0.
  bool trivially_satisfied = false;
  bool exceeds_threshold = false;
};

Assumption1Result assumption1_monitor(const RiskTrajectory& trajectory, double sigma,
                                      std::uint64_t first_cut_step, double threshold = 10.0);

/// max_t total_risk(t) / sigma^2 over the records of each phase.
std::vector<double> per_phase_observed_c(const RiskTrajectory& trajectory, double sigma);

/// Step index of the first scheduler change (the serial length of phase 0).
std::uint64_t first_cut_step(const ScheduleSpec& schedule);

struct PhaseComparison {
  std::size_t phase = 0;
  double samples = 0.0;
  double risk_a = 0.0;
  double risk_b = 0.0;
  double ratio = 0.0; // risk_a / risk_b
  /// Risk of B with every learning rate multiplied by lr_inflation (NaN when not run).
  double risk_b_inflated = std::numeric_limits<double>::quiet_NaN();
  /// risk_b_inflated / risk_a.
  double inflated_ratio = std::numeric_limits<double>::quiet_NaN();
  /// True when a phase end had to be interpolated to the common sample count.
  bool interpolated = false;
};

struct EquivalenceReport {
  OptimizerFamily family = OptimizerFamily::sgd;
  NsgdMode nsgd_mode = NsgdMode::variance_dominated;
  double alpha_a = 1.0, beta_a = 1.0, alpha_b = 1.0, beta_b = 1.0;
  double product_a = 1.0, product_b = 1.0;
  double lr_inflation = 1.0;

  std::vector<PhaseComparison> phases;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  /// Smallest C with every ratio in [1/C, C] and every inflated ratio <= C.
  double uniform_constant = 1.0;

  Assumption1Result assumption1_a;
  Assumption1Result assumption1_b;
  GuardStatus guard_a = GuardStatus::ok;
  GuardStatus guard_b = GuardStatus::ok;
  double min_dominance_a = std::numeric_limits<double>::quiet_NaN();
  double min_dominance_b = std::numeric_limits<double>::quiet_NaN();

  RiskTrajectory trajectory_a;
  RiskTrajectory trajectory_b;

  /// ratio_max / ratio_min.
  double ratio_spread() const noexcept { return ratio_max / ratio_min; }
  /// Every phase satisfies risk_b_inflated <= C risk_a and risk_a <= C risk_b.
  bool sandwich_holds(double constant) const noexcept;
};

struct CompareOptions {
  double lr_inflation = 1.01;
  NsgdMode nsgd_mode = NsgdMode::variance_dominated;
  bool allow_divergent = false;
  double product_tolerance = 1e-9;
  double assumption1_threshold = 10.0;
  StepObserver observer;
};

/// Evolves both schedules with the exact engine and compares risks at equal
/// cumulative samples at the end of every phase.
///
/// Throws InvalidArgument on mismatched sample budgets, mismatched equivalence
/// products or a learning rate above max_theorem_lr, and GuardFailure when a
/// schedule fails the divergence guard without `allow_divergent`.
EquivalenceReport compare_procedures(const ProblemInstance& problem, const ScheduleSpec& schedule_a,
                                     const ScheduleSpec& schedule_b, OptimizerFamily family,
                                     const CompareOptions& options = {});

/// Risk at a cumulative sample count, linearly interpolated between records.
double risk_at_samples(const RiskTrajectory& trajectory, double samples, bool* interpolated = nullptr);

struct InvLambdaCheck {
  bool pass = false;
  std::vector<double> upper_bound;  // alpha^k / eta
  std::vector<double> middle;       // (I - (I - eta/alpha^k Lambda)^2)^-1 lambda
  std::vector<double> lower_bound;  // alpha^k / (2 eta)
  std::vector<double> upper_margin; // upper_bound - middle
  std::vector<double> lower_margin; // middle - lower_bound
  double min_margin = 0.0;          // smallest relative margin
};

InvLambdaCheck check_lemma_inv_lambda(double eta, double alpha, unsigned k, const Spectrum& spectrum);

struct ContractionCheck {
  bool pass = false;
  /// Log-diagonals of (I - 1.01 eta/a2^k L)^(2 b1^k), (I - eta/a1^k L)^(2 b2^k),
  /// (I - eta/a2^k L)^(2 b1^k).
  std::vector<double> log_left;
  std::vector<double> log_middle;
  std::vector<double> log_right;
  std::vector<double> left_margin;  // log_middle - log_left
  std::vector<double> right_margin; // log_right - log_middle
  double min_left_margin = 0.0;
  double min_right_margin = 0.0;
};

ContractionCheck check_lemma_contractions(double eta, double alpha1, double alpha2, double beta1,
                                          double beta2, unsigned k, const Spectrum& spectrum,
                                          double inflation = 1.01);

} // namespace seesaw
