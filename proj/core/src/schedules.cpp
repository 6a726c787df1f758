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

#include "seesaw/schedules.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "seesaw/error.hpp"

namespace seesaw {

namespace {

// Relative slack used when comparing factors that are nominally equal
// (sqrt(2) vs 2^(1/2), ...).
constexpr double kFactorTolerance = 1e-12;

void require_factor(double value, const char* name) {
  if (!(value >= 1.0) || !std::isfinite(value)) {
    throw InvalidArgument(std::string(name) + " must be a finite real >= 1");
  }
}

} // namespace

std::string_view to_string(OptimizerFamily family) noexcept {
  return family == OptimizerFamily::sgd ? "sgd" : "nsgd";
}

std::string_view to_string(GuardStatus status) noexcept {
  return status == GuardStatus::ok ? "ok" : "will_diverge";
}

ScheduleSpec::ScheduleSpec(double base_lr, double base_batch, double lr_decay_factor,
                           double batch_ramp_factor, std::vector<double> phase_samples,
                           OptimizerFamily family)
    : base_lr_(base_lr), base_batch_(base_batch), lr_decay_(lr_decay_factor),
      batch_ramp_(batch_ramp_factor), phase_samples_(std::move(phase_samples)), family_(family) {
  if (!(base_lr_ > 0.0) || !std::isfinite(base_lr_)) {
    throw InvalidArgument("base learning rate must be positive");
  }
  if (!(base_batch_ >= 1.0) || !std::isfinite(base_batch_)) {
    throw InvalidArgument("base batch size must be >= 1");
  }
  require_factor(lr_decay_, "lr decay factor");
  require_factor(batch_ramp_, "batch ramp factor");
  if (phase_samples_.empty()) {
    throw InvalidArgument("schedule needs at least one phase");
  }
  for (double p : phase_samples_) {
    if (!(p > 0.0) || !std::isfinite(p)) {
      throw InvalidArgument("phase sample budgets must be positive");
    }
  }
}

double ScheduleSpec::lr(std::size_t phase) const {
  return base_lr_ * std::pow(lr_decay_, -static_cast<double>(phase));
}

double ScheduleSpec::batch(std::size_t phase) const {
  return base_batch_ * std::pow(batch_ramp_, static_cast<double>(phase));
}

Phase ScheduleSpec::phase(std::size_t k) const {
  if (k >= phase_samples_.size()) {
    throw InvalidArgument("phase index out of range");
  }
  return Phase{lr(k), batch(k), phase_samples_[k]};
}

std::uint64_t ScheduleSpec::phase_steps(std::size_t k) const {
  return steps_for_samples(phase_samples_.at(k), batch(k));
}

ScheduleSpec ScheduleSpec::with_lr_scale(double factor) const {
  if (!(factor > 0.0)) {
    throw InvalidArgument("learning-rate scale must be positive");
  }
  return ScheduleSpec(base_lr_ * factor, base_batch_, lr_decay_, batch_ramp_, phase_samples_,
                      family_);
}

ScheduleSpec ScheduleSpec::with_family(OptimizerFamily family) const {
  return ScheduleSpec(base_lr_, base_batch_, lr_decay_, batch_ramp_, phase_samples_, family);
}

double ScheduleSpec::equivalence_product() const noexcept {
  return family_ == OptimizerFamily::sgd ? lr_decay_ * batch_ramp_
                                         : lr_decay_ * std::sqrt(batch_ramp_);
}

ScheduleSpec make_constant_schedule(double lr, double batch, std::vector<double> phase_samples,
                                    OptimizerFamily family) {
  return ScheduleSpec(lr, batch, 1.0, 1.0, std::move(phase_samples), family);
}

void CutPlan::validate() const {
  if (total_steps == 0) {
    throw InvalidArgument("cut plan needs total_steps >= 1");
  }
  if (!(decay_per_cut >= 1.0) || !std::isfinite(decay_per_cut)) {
    throw InvalidArgument("decay per cut must be >= 1");
  }
  if (!cut_steps.empty() && !(decay_per_cut > 1.0)) {
    throw InvalidArgument("decay per cut must be > 1 when cuts are present");
  }
  std::uint64_t previous = 0;
  for (std::uint64_t s : cut_steps) {
    if (s <= previous) {
      throw InvalidArgument("cut steps must be strictly increasing and positive");
    }
    if (s >= total_steps) {
      throw InvalidArgument("cut step " + std::to_string(s) + " is not below total_steps");
    }
    previous = s;
  }
}

namespace {

std::vector<double> phase_samples_from_plan(const CutPlan& plan, double batch0) {
  std::vector<double> samples;
  samples.reserve(plan.cut_steps.size() + 1);
  std::uint64_t start = 0;
  for (std::uint64_t s : plan.cut_steps) {
    samples.push_back(static_cast<double>(s - start) * batch0);
    start = s;
  }
  samples.push_back(static_cast<double>(plan.total_steps - start) * batch0);
  return samples;
}

} // namespace

ScheduleSpec reference_from_cut_plan(const CutPlan& plan, double eta0, double batch0,
                                     OptimizerFamily family) {
  plan.validate();
  return ScheduleSpec(eta0, batch0, plan.decay_per_cut, 1.0, phase_samples_from_plan(plan, batch0),
                      family);
}

ScheduleSpec seesaw_from_cut_plan(const CutPlan& plan, double eta0, double batch0,
                                  OptimizerFamily family) {
  plan.validate();
  return ScheduleSpec(eta0, batch0, std::sqrt(plan.decay_per_cut), plan.decay_per_cut,
                      phase_samples_from_plan(plan, batch0), family);
}

CutPlan cosine_to_step_cuts(std::uint64_t total_steps, double alpha) {
  if (!(alpha > 1.0) || !std::isfinite(alpha)) {
    throw InvalidArgument("cosine cut factor must be > 1");
  }
  if (total_steps == 0) {
    throw InvalidArgument("cosine schedule needs total_steps >= 1");
  }
  CutPlan plan;
  plan.total_steps = total_steps;
  plan.decay_per_cut = alpha;
  const double horizon = 2.0 * static_cast<double>(total_steps) / std::numbers::pi;
  for (int k = 1;; ++k) {
    const double level = std::pow(alpha, -static_cast<double>(k));
    const double exact = horizon * std::acos(level);
    // Nearest integer, ties toward the lower step.
    const double rounded = std::ceil(exact - 0.5);
    if (rounded >= static_cast<double>(total_steps)) {
      break;
    }
    const auto step = static_cast<std::uint64_t>(rounded);
    // Two cosine levels landing on one step (or on step 0) would leave an
    // empty phase; keep the first.
    if (step == 0 || (!plan.cut_steps.empty() && step <= plan.cut_steps.back())) {
      continue;
    }
    plan.cut_steps.push_back(step);
  }
  return plan;
}

GuardStatus check_divergence_guard(double alpha, double beta, OptimizerFamily family) noexcept {
  if (family == OptimizerFamily::nsgd) {
    return alpha < std::sqrt(beta) * (1.0 - kFactorTolerance) ? GuardStatus::will_diverge
                                                                : GuardStatus::ok;
  }
  return alpha < 1.0 - kFactorTolerance ? GuardStatus::will_diverge : GuardStatus::ok;
}

GuardStatus check_divergence_guard(const ScheduleSpec& schedule) noexcept {
  return check_divergence_guard(schedule.lr_decay_factor(), schedule.batch_ramp_factor(),
                                schedule.family());
}

double theoretical_speedup_cosine() noexcept { return 1.0 - 2.0 / std::numbers::pi; }

double cosine_equivalent_steps(double total_steps) noexcept {
  return 2.0 * total_steps / std::numbers::pi;
}

std::uint64_t serial_steps(const ScheduleSpec& schedule) {
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < schedule.num_phases(); ++k) {
    total += schedule.phase_steps(k);
  }
  return total;
}

std::uint64_t steps_for_samples(double samples, double batch) {
  if (!(samples > 0.0) || !(batch > 0.0)) {
    throw InvalidArgument("steps_for_samples needs positive samples and batch");
  }
  const double quotient = samples / batch;
  const double nearest = std::round(quotient);
  if (std::abs(quotient - nearest) <= 1e-9 * std::max(1.0, nearest)) {
    return static_cast<std::uint64_t>(std::max(1.0, nearest));
  }
  return static_cast<std::uint64_t>(std::ceil(quotient));
}

std::uint64_t realized_batch(double batch) noexcept {
  const double rounded = std::round(batch);
  return rounded < 1.0 ? 1 : static_cast<std::uint64_t>(rounded);
}

} // namespace seesaw
