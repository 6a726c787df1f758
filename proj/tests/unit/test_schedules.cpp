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

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "seesaw/error.hpp"
#include "seesaw/schedules.hpp"

using namespace seesaw;

TEST_CASE("phase learning rates, batches and step counts") {
  const ScheduleSpec s(0.1, 4.0, 2.0, 3.0, {100.0, 120.0, 1000.0});
  CHECK(s.lr(0) == 0.1);
  CHECK(s.lr(2) == doctest::Approx(0.025));
  CHECK(s.batch(1) == 12.0);
  CHECK(s.batch(2) == 36.0);
  CHECK(s.phase_steps(0) == 25);
  CHECK(s.phase_steps(1) == 10);
  CHECK(s.phase_steps(2) == 28); // ceil(27.8)
  CHECK(serial_steps(s) == 63);
  CHECK(s.equivalence_product() == 6.0);
  CHECK(s.with_family(OptimizerFamily::nsgd).equivalence_product() == doctest::Approx(2.0 * std::sqrt(3.0)));
  CHECK(s.with_lr_scale(1.01).lr(1) == doctest::Approx(0.0505));
  CHECK_THROWS_AS(s.phase(3), InvalidArgument);
}

TEST_CASE("steps_for_samples snaps near-integer quotients") {
  CHECK(steps_for_samples(8.0, 2.0) == 4);
  CHECK(steps_for_samples(9.0, 2.0) == 5);
  // 0.3 / 0.1 is 2.9999999999999996 in binary.
  CHECK(steps_for_samples(0.3, 0.1) == 3);
  CHECK(steps_for_samples(1000.0, std::pow(2.0, 1.5)) == 354);
  CHECK_THROWS_AS(steps_for_samples(0.0, 1.0), InvalidArgument);
}

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(ScheduleSpec(0.0, 1.0, 1.0, 1.0, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(ScheduleSpec(0.1, 0.5, 1.0, 1.0, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(ScheduleSpec(0.1, 1.0, 0.5, 1.0, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(ScheduleSpec(0.1, 1.0, 1.0, 0.9, {1.0}), InvalidArgument);
  CHECK_THROWS_AS(ScheduleSpec(0.1, 1.0, 1.0, 1.0, {}), InvalidArgument);
  CHECK_THROWS_AS(ScheduleSpec(0.1, 1.0, 1.0, 1.0, {10.0, -1.0}), InvalidArgument);
}

TEST_CASE("cosine cuts for T = 100, alpha = 2") {
  // t_k = (200 / pi) acos(2^-k): 66.67, 83.91, 92.02, 96.02, 98.01, 99.01, 99.50 (= T after rounding).
  const CutPlan plan = cosine_to_step_cuts(100, 2.0);
  CHECK(plan.cut_steps == std::vector<std::uint64_t>{67, 84, 92, 96, 98, 99});
  CHECK(plan.total_steps == 100);
  CHECK(plan.decay_per_cut == 2.0);
  CHECK_NOTHROW(plan.validate());
}

TEST_CASE("cosine cuts follow the continuous schedule") {
  for (double alpha : {2.0, std::sqrt(2.0), std::pow(2.0, 0.125)}) {
    const std::uint64_t total = 10'000;
    const CutPlan plan = cosine_to_step_cuts(total, alpha);
    // Nearest-integer crossings of alpha^-k below T, duplicates collapsed.
    std::vector<std::uint64_t> expected;
    for (int k = 1;; ++k) {
      const double exact = 2.0 * total / std::numbers::pi * std::acos(std::pow(alpha, -double(k)));
      const double rounded = std::ceil(exact - 0.5);
      if (rounded >= double(total)) break;
      if (expected.empty() || rounded > double(expected.back())) expected.push_back(std::uint64_t(rounded));
    }
    CHECK(plan.cut_steps == expected);
    CHECK_NOTHROW(plan.validate());
  }
}

TEST_CASE("seesaw and reference schedules share phase sample budgets") {
  const CutPlan plan{{100, 250, 400}, 500, 4.0};
  const ScheduleSpec ref = reference_from_cut_plan(plan, 0.1, 8.0);
  const ScheduleSpec see = seesaw_from_cut_plan(plan, 0.1, 8.0);
  CHECK(ref.phase_samples() == std::vector<double>{800.0, 1200.0, 1200.0, 800.0});
  CHECK(see.phase_samples() == ref.phase_samples());
  CHECK(ref.lr_decay_factor() == 4.0);
  CHECK(ref.batch_ramp_factor() == 1.0);
  CHECK(see.lr_decay_factor() == 2.0);
  CHECK(see.batch_ramp_factor() == 4.0);
  CHECK(see.family() == OptimizerFamily::nsgd);
  CHECK(see.equivalence_product() == doctest::Approx(ref.equivalence_product()));
  CHECK(serial_steps(ref) == 500);
  CHECK(serial_steps(see) == 100 + 38 + 10 + 2); // 1200/32, 1200/128 and 800/512 rounded up
}

TEST_CASE("cut plan validation") {
  CHECK_THROWS_AS((CutPlan{{5, 5}, 10, 2.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((CutPlan{{0}, 10, 2.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((CutPlan{{10}, 10, 2.0}.validate()), InvalidArgument);
  CHECK_THROWS_AS((CutPlan{{5}, 10, 1.0}.validate()), InvalidArgument);
  CHECK_NOTHROW((CutPlan{{}, 10, 1.0}.validate()));
  CHECK_THROWS_AS(cosine_to_step_cuts(100, 1.0), InvalidArgument);
}

TEST_CASE("divergence guard") {
  CHECK(check_divergence_guard(1.0, 4.0, OptimizerFamily::nsgd) == GuardStatus::will_diverge);
  CHECK(check_divergence_guard(std::pow(2.0, 0.25), std::pow(2.0, 1.5), OptimizerFamily::nsgd) ==
        GuardStatus::will_diverge);
  CHECK(check_divergence_guard(std::sqrt(2.0), 2.0, OptimizerFamily::nsgd) == GuardStatus::ok);
  CHECK(check_divergence_guard(2.0, 1.0, OptimizerFamily::nsgd) == GuardStatus::ok);
  // SGD: a larger batch never raises the step size.
  CHECK(check_divergence_guard(1.0, 4.0, OptimizerFamily::sgd) == GuardStatus::ok);
  CHECK(check_divergence_guard(1.0, 2.0, OptimizerFamily::sgd) == GuardStatus::ok);
  const ScheduleSpec s(0.1, 1.0, 1.0, 4.0, {1.0}, OptimizerFamily::nsgd);
  CHECK(check_divergence_guard(s) == GuardStatus::will_diverge);
  CHECK(to_string(GuardStatus::will_diverge) == "will_diverge");
}

TEST_CASE("speedup closed form") {
  CHECK(theoretical_speedup_cosine() == doctest::Approx(0.36338).epsilon(1e-5));
  CHECK(theoretical_speedup_cosine() == doctest::Approx(1.0 - 2.0 / std::numbers::pi).epsilon(1e-15));
  CHECK(cosine_equivalent_steps(10'000) == doctest::Approx(6366.197723675814));
}

TEST_CASE("realized batches") {
  CHECK(realized_batch(1.0) == 1);
  CHECK(realized_batch(2.0 * std::sqrt(2.0)) == 3);
  CHECK(realized_batch(5.5) == 6);
  CHECK(realized_batch(0.4) == 1);
}
