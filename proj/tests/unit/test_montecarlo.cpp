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

#include "seesaw/error.hpp"
#include "seesaw/montecarlo.hpp"

using namespace seesaw;

namespace {

bool identical(const McTrajectory& a, const McTrajectory& b) {
  if (a.records.size() != b.records.size()) return false;
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    if (a.records[i].mean_excess_risk != b.records[i].mean_excess_risk ||
        a.records[i].stderr_excess_risk != b.records[i].stderr_excess_risk ||
        a.records[i].step != b.records[i].step || a.records[i].samples != b.records[i].samples) {
      return false;
    }
  }
  return a.realized_batches == b.realized_batches;
}

} // namespace

TEST_CASE("noise-free run from the optimum stays at zero") {
  const ProblemInstance p(Spectrum({1.0, 0.3}), 0.0, {0.0, 0.0}, {0.0, 0.0});
  McConfig config;
  config.trials = 10;
  const McTrajectory mc = run_sgd_trials(p, make_constant_schedule(0.1, 2.0, {100.0}), config);
  for (const McRecord& r : mc.records) {
    CHECK(r.mean_excess_risk == 0.0);
    CHECK(r.stderr_excess_risk == 0.0);
  }
}

TEST_CASE("one-dimensional constant schedule agrees with the exact engine") {
  const ProblemInstance p = make_deterministic_problem(Spectrum({1.0}), 1.0);
  const ScheduleSpec s = make_constant_schedule(0.01, 4.0, {8000.0});
  McConfig config;
  config.trials = 1000;
  config.seed = 3;
  config.record_every = 20;
  const McTrajectory mc = run_sgd_trials(p, s, config);
  const RiskTrajectory exact = evolve(p, s);
  REQUIRE(mc.records.size() == 101);
  std::size_t agree = 0;
  for (const McRecord& r : mc.records) {
    const double target = exact.records[r.step].excess_risk;
    if (std::abs(r.mean_excess_risk - target) <= 3.0 * r.stderr_excess_risk + 1e-12 * target) ++agree;
  }
  CHECK(agree >= 99);
  CHECK(mc.records.back().step == 2000);
  CHECK(mc.records.back().samples == 8000.0);
}

TEST_CASE("seeded runs are reproducible across worker counts") {
  const ProblemInstance p = make_gaussian_init_problem(make_power_law_spectrum(4, 1.0), 0.5);
  const ScheduleSpec s(0.05, 2.0, std::sqrt(2.0), 2.0, {200.0, 200.0, 200.0});
  McConfig config;
  config.trials = 37;
  config.seed = 99;
  const McTrajectory one = run_sgd_trials(p, s, config);
  const McTrajectory again = run_sgd_trials(p, s, config);
  config.workers = 4;
  const McTrajectory four = run_sgd_trials(p, s, config);
  CHECK(identical(one, again));
  CHECK(identical(one, four));
  config.seed = 100;
  CHECK_FALSE(identical(one, run_sgd_trials(p, s, config)));
}

TEST_CASE("variance-dominated NSGD with shared seed is SGD at the effective step") {
  const ProblemInstance p = make_deterministic_problem(make_power_law_spectrum(3, 1.0), 1.0);
  const ScheduleSpec nsgd_s = make_constant_schedule(0.02, 4.0, {400.0}, OptimizerFamily::nsgd);
  const ScheduleSpec sgd_s = make_constant_schedule(effective_lr(0.02, 4.0, p), 4.0, {400.0});
  McConfig config;
  config.trials = 20;
  CHECK(identical(run_nsgd_trials(p, nsgd_s, config, NsgdMode::variance_dominated),
                  run_sgd_trials(p, sgd_s, config)));
}

TEST_CASE("full-denominator plan starts at the variance-dominated step from the optimum") {
  const ProblemInstance p(Spectrum({1.0, 0.5}), 1.0, {0.0, 0.0}, {0.0, 0.0});
  const ScheduleSpec s = make_constant_schedule(0.01, 4.0, {40.0}, OptimizerFamily::nsgd);
  const auto full = nsgd_plan(p, s, NsgdMode::full_denominator);
  const auto vd = nsgd_plan(p, s, NsgdMode::variance_dominated);
  CHECK(full[0].step_size == doctest::Approx(vd[0].step_size).epsilon(1e-15));
  CHECK(full[1].step_size < vd[1].step_size);
}

TEST_CASE("batches are rounded and logged") {
  const ProblemInstance p = make_deterministic_problem(Spectrum({1.0}), 1.0);
  const ScheduleSpec s(0.01, 2.0, 1.0, std::pow(2.0, 1.5), {20.0, 20.0, 20.0});
  const auto plan = sgd_plan(s);
  McConfig config;
  config.trials = 2;
  const McTrajectory mc = run_planned_trials(p, plan, s.num_phases(), config);
  // 2, 5.66 and 16 round to 2, 6, 16; steps 10, ceil(20/6) = 4, ceil(20/16) = 2.
  CHECK(mc.realized_batches == std::vector<std::uint64_t>{2, 6, 16});
  CHECK(plan.size() == 16);
  CHECK(mc.records.back().samples == 20.0 + 24.0 + 32.0);
}

TEST_CASE("recording grid keeps step 0, the stride and the final step") {
  const ProblemInstance p = make_deterministic_problem(Spectrum({1.0}), 1.0);
  McConfig config;
  config.trials = 2;
  config.record_every = 4;
  const McTrajectory mc = run_sgd_trials(p, make_constant_schedule(0.01, 1.0, {10.0}), config);
  std::vector<std::uint64_t> steps;
  for (const auto& r : mc.records) steps.push_back(r.step);
  CHECK(steps == std::vector<std::uint64_t>{0, 4, 8, 10});
}

TEST_CASE("standard error shrinks like 1/sqrt(trials)") {
  const ProblemInstance p = make_deterministic_problem(Spectrum({1.0, 0.5}), 1.0);
  const ScheduleSpec s = make_constant_schedule(0.05, 2.0, {400.0});
  std::vector<double> se;
  for (std::uint64_t trials : {250u, 1000u, 4000u}) {
    McConfig config;
    config.trials = trials;
    config.seed = 11;
    config.record_every = 1000;
    se.push_back(run_sgd_trials(p, s, config).records.back().stderr_excess_risk);
  }
  CHECK(se[0] / se[1] == doctest::Approx(2.0).epsilon(0.2));
  CHECK(se[1] / se[2] == doctest::Approx(2.0).epsilon(0.2));
}

TEST_CASE("configuration guards") {
  const ProblemInstance p = make_deterministic_problem(make_power_law_spectrum(8, 1.0), 1.0);
  const ScheduleSpec s = make_constant_schedule(0.01, 1.0, {10.0});
  McConfig config;
  config.trials = 1;
  CHECK_THROWS_AS(run_sgd_trials(p, s, config), InvalidArgument);
  config.trials = 2;
  config.max_dimension = 4;
  CHECK_THROWS_AS(run_sgd_trials(p, s, config), InvalidArgument);
  config.max_dimension = 4096;
  config.record_every = 0;
  CHECK_THROWS_AS(run_sgd_trials(p, s, config), InvalidArgument);
  config.record_every = 1;
  CHECK_THROWS_AS(run_nsgd_trials(p.with_noise_variance(0.0), s, config, NsgdMode::variance_dominated),
                  InvalidArgument);
}
