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
#include <string_view>
#include <vector>

namespace seesaw {

enum class OptimizerFamily { sgd, nsgd };
enum class GuardStatus { ok, will_diverge };

std::string_view to_string(OptimizerFamily family) noexcept;
std::string_view to_string(GuardStatus status) noexcept;

/// Learning rate, batch size and sample budget of one phase.
struct Phase {
  double lr;
  double batch;
  double samples;
};

/// Phase-indexed schedule: phase k runs at (lr * lr_decay^-k, batch * batch_ramp^k)
/// until it has consumed phase_samples[k] samples.
///
/// Batch sizes are real-valued; the exact engine uses them as-is and the Monte
/// Carlo engine rounds them (see `realized_batch`).
class ScheduleSpec {
public:
  ScheduleSpec(double base_lr, double base_batch, double lr_decay_factor,
               double batch_ramp_factor, std::vector<double> phase_samples,
               OptimizerFamily family = OptimizerFamily::sgd);

  double base_lr() const noexcept { return base_lr_; }
  double base_batch() const noexcept { return base_batch_; }
  double lr_decay_factor() const noexcept { return lr_decay_; }
  double batch_ramp_factor() const noexcept { return batch_ramp_; }
  OptimizerFamily family() const noexcept { return family_; }
  const std::vector<double>& phase_samples() const noexcept { return phase_samples_; }
  std::size_t num_phases() const noexcept { return phase_samples_.size(); }

  double lr(std::size_t phase) const;
  double batch(std::size_t phase) const;
  Phase phase(std::size_t k) const;

  /// ceil(P_k / B_k), with quotients within 1e-9 of an integer snapped to it.
  std::uint64_t phase_steps(std::size_t phase) const;

  /// Same schedule with every learning rate multiplied by `factor`.
  ScheduleSpec with_lr_scale(double factor) const;
  ScheduleSpec with_family(OptimizerFamily family) const;

  /// lr_decay * batch_ramp for SGD, lr_decay * sqrt(batch_ramp) for NSGD.
  double equivalence_product() const noexcept;

private:
  double base_lr_;
  double base_batch_;
  double lr_decay_;
  double batch_ramp_;
  std::vector<double> phase_samples_;
  OptimizerFamily family_;
};

ScheduleSpec make_constant_schedule(double lr, double batch, std::vector<double> phase_samples,
                                    OptimizerFamily family = OptimizerFamily::sgd);

/// Steps at which a reference scheduler divides the learning rate by `decay_per_cut`.
struct CutPlan {
  std::vector<std::uint64_t> cut_steps;
  std::uint64_t total_steps = 0;
  double decay_per_cut = 1.0;

  /// Throws InvalidArgument unless cuts are strictly increasing, positive and < total_steps.
  void validate() const;
};

/// Constant-batch step decay that cuts by `decay_per_cut` at each cut step.
ScheduleSpec reference_from_cut_plan(const CutPlan& plan, double eta0, double batch0,
                                     OptimizerFamily family = OptimizerFamily::nsgd);

/// The Seesaw replacement of `reference_from_cut_plan`: every cut divides the
/// learning rate by sqrt(alpha) and multiplies the batch by alpha. Phase sample
/// budgets equal those of the reference run.
ScheduleSpec seesaw_from_cut_plan(const CutPlan& plan, double eta0, double batch0,
                                  OptimizerFamily family = OptimizerFamily::nsgd);

/// Step-decay approximation of eta0 * cos(pi t / 2T): the k-th cut is the step
/// where the cosine first reaches alpha^-k, rounded to nearest (ties down).
CutPlan cosine_to_step_cuts(std::uint64_t total_steps, double alpha);

/// NSGD: diverges iff alpha < sqrt(beta). SGD: the batch size never raises the
/// step size, so only alpha < 1 would diverge.
GuardStatus check_divergence_guard(double alpha, double beta, OptimizerFamily family) noexcept;
GuardStatus check_divergence_guard(const ScheduleSpec& schedule) noexcept;

/// 1 - 2/pi.
double theoretical_speedup_cosine() noexcept;

/// Serial steps of the continuous batch-ramp equivalent of a T-step cosine run: 2T/pi.
double cosine_equivalent_steps(double total_steps) noexcept;

std::uint64_t serial_steps(const ScheduleSpec& schedule);

/// ceil(samples / batch), with quotients within 1e-9 of an integer snapped to it.
std::uint64_t steps_for_samples(double samples, double batch);

/// Batch used by the Monte Carlo engine: nearest integer, at least 1.
std::uint64_t realized_batch(double batch) noexcept;

} // namespace seesaw
