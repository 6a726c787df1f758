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

#include "seesaw/equivalence.hpp"
#include "seesaw/error.hpp"

using namespace seesaw;

namespace {

std::vector<double> geometric_samples(double first, double growth, std::size_t phases) {
  std::vector<double> out;
  for (std::size_t k = 0; k < phases; ++k) out.push_back(first * std::pow(growth, double(k)));
  return out;
}

} // namespace

TEST_CASE("identical procedures compare with ratio exactly one") {
  const ProblemInstance p = make_deterministic_problem(make_power_law_spectrum(4, 1.0), 1.0);
  const double eta = 0.5 * max_theorem_lr(p.spectrum());
  const ScheduleSpec s(eta, 2.0, 2.0, 1.0, {2000.0, 2000.0, 2000.0});
  const EquivalenceReport r = compare_procedures(p, s, s, OptimizerFamily::sgd);
  REQUIRE(r.phases.size() == 3);
  for (const PhaseComparison& c : r.phases) {
    CHECK(c.ratio == 1.0);
    CHECK_FALSE(c.interpolated);
    CHECK(c.inflated_ratio > 0.0);
  }
  CHECK(r.ratio_spread() == 1.0);
  CHECK(r.uniform_constant >= 1.0);
  CHECK(r.sandwich_holds(r.uniform_constant));
}

TEST_CASE("matched and unmatched products") {
  // SGD (2, 1) and (1, 2) share alpha beta = 2. Starting at the optimum the
  // risk is pure noise injection: decaying eta by 2 or doubling B halves it.
  // (1, 4) quarters it every phase and drifts away from (2, 1).
  const ProblemInstance p(Spectrum({1.0}), 1.0, {0.0}, {0.0});
  const double eta = 0.9 * max_theorem_lr(p.spectrum());
  const std::vector<double> samples = geometric_samples(2000.0, 4.0, 5);
  const ScheduleSpec decay(eta, 1.0, 2.0, 1.0, samples);
  const ScheduleSpec ramp(eta, 1.0, 1.0, 2.0, samples);
  const ScheduleSpec over(eta, 1.0, 1.0, 4.0, samples);

  const EquivalenceReport good = compare_procedures(p, decay, ramp, OptimizerFamily::sgd);
  CHECK(good.ratio_spread() < 1.1);
  CHECK(good.sandwich_holds(1.1));

  CHECK_THROWS_AS(compare_procedures(p, decay, over, OptimizerFamily::sgd), InvalidArgument);
  const RiskTrajectory a = evolve(p, decay);
  const RiskTrajectory b = evolve(p, over);
  const double first = a.phase_ends.front().excess_risk / b.phase_ends.front().excess_risk;
  const double last = a.phase_ends.back().excess_risk / b.phase_ends.back().excess_risk;
  CHECK(last / first >= 8.0);
}

TEST_CASE("compare_procedures rejects invalid inputs") {
  const ProblemInstance p = make_deterministic_problem(Spectrum({1.0}), 1.0);
  const ScheduleSpec s(0.005, 1.0, 2.0, 1.0, {100.0, 100.0});
  CHECK_THROWS_AS(compare_procedures(p, s, ScheduleSpec(0.005, 1.0, 2.0, 1.0, {100.0}), OptimizerFamily::sgd),
                  InvalidArgument);
  CHECK_THROWS_AS(compare_procedures(p, s, ScheduleSpec(0.005, 1.0, 2.0, 1.0, {100.0, 120.0}),
                                     OptimizerFamily::sgd),
                  InvalidArgument);
  const ScheduleSpec hot(0.02, 1.0, 2.0, 1.0, {100.0, 100.0});
  CHECK_THROWS_AS(compare_procedures(p, hot, hot, OptimizerFamily::sgd), InvalidArgument);
  CompareOptions options;
  options.lr_inflation = 0.5;
  CHECK_THROWS_AS(compare_procedures(p, s, s, OptimizerFamily::sgd, options), InvalidArgument);

  // NSGD (1, 4) against (2, 1): products 1 * 2 = 2 and 2 * 1 = 2, but (1, 4) fails the guard.
  const ScheduleSpec decay(0.001, 1.0, 2.0, 1.0, {100.0, 400.0});
  const ScheduleSpec ramp(0.001, 1.0, 1.0, 4.0, {100.0, 400.0});
  CHECK_THROWS_AS(compare_procedures(p, decay, ramp, OptimizerFamily::nsgd), GuardFailure);
  options = {};
  options.allow_divergent = true;
  const EquivalenceReport r = compare_procedures(p, decay, ramp, OptimizerFamily::nsgd, options);
  CHECK(r.guard_b == GuardStatus::will_diverge);
}

TEST_CASE("inverse-lambda bounds on a scalar problem") {
  // eta lambda = 0.01: 1 / (1 - 0.99^2) = 1 / 0.0199.
  const InvLambdaCheck c = check_lemma_inv_lambda(0.01, 2.0, 0, Spectrum({1.0}));
  CHECK(c.pass);
  CHECK(c.upper_bound[0] == doctest::Approx(100.0));
  CHECK(c.lower_bound[0] == doctest::Approx(50.0));
  CHECK(c.middle[0] == doctest::Approx(50.25125628140704).epsilon(1e-12));
  const InvLambdaCheck k3 = check_lemma_inv_lambda(0.01, 2.0, 3, Spectrum({1.0}));
  CHECK(k3.upper_bound[0] == doctest::Approx(800.0));
  CHECK(k3.middle[0] == doctest::Approx(1.0 / (1.0 - std::pow(1.0 - 0.01 / 8.0, 2))).epsilon(1e-12));
  CHECK_THROWS_AS(check_lemma_inv_lambda(0.02, 2.0, 0, Spectrum({1.0})), InvalidArgument);
}

TEST_CASE("contraction ordering") {
  const Spectrum sp = make_power_law_spectrum(8, 1.0);
  const double eta = max_theorem_lr(sp);
  // Degenerate pair: middle and right coincide.
  const ContractionCheck same = check_lemma_contractions(eta, 2.0, 2.0, 1.0, 1.0, 3, sp);
  CHECK(same.pass);
  CHECK(same.min_right_margin == 0.0);
  CHECK(same.min_left_margin > 0.0);
  for (unsigned k = 1; k <= 6; ++k) {
    const ContractionCheck c = check_lemma_contractions(eta, 1.0, 2.0, 2.0, 1.0, k, sp);
    CHECK(c.pass);
    CHECK(c.min_right_margin > 0.0);
  }
  CHECK(check_lemma_contractions(eta, 1.0, 2.0, 2.0, 1.0, 0, sp).min_right_margin == 0.0);
  CHECK_THROWS_AS(check_lemma_contractions(eta, 1.0, 2.0, 3.0, 1.0, 1, sp), InvalidArgument);
  CHECK_THROWS_AS(check_lemma_contractions(eta, 2.0, 1.0, 1.0, 2.0, 1, sp), InvalidArgument);
  CHECK_THROWS_AS(check_lemma_contractions(2.0 * eta, 1.0, 2.0, 2.0, 1.0, 1, sp), InvalidArgument);
}

TEST_CASE("bounded-risk monitor") {
  RiskTrajectory t;
  for (std::uint64_t s = 0; s <= 10; ++s) {
    TrajectoryRecord r;
    r.step = s;
    r.excess_risk = s <= 3 ? 5.0 : 0.3;
    t.records.push_back(r);
  }
  const Assumption1Result a = assumption1_monitor(t, 1.0, 3);
  CHECK(a.observed_c == doctest::Approx(0.8));
  CHECK_FALSE(a.trivially_satisfied);
  CHECK_FALSE(a.exceeds_threshold);
  CHECK(assumption1_monitor(t, 1.0, 2).observed_c == doctest::Approx(5.5));
  CHECK(assumption1_monitor(t, 1.0, 2, 5.0).exceeds_threshold);

  for (auto& r : t.records) r.excess_risk = 0.0;
  const Assumption1Result z = assumption1_monitor(t, 1.0, 3);
  CHECK(z.trivially_satisfied);
  CHECK(z.observed_c == 0.0);
  CHECK_THROWS_AS(assumption1_monitor(t, 1.0, 10), InvalidArgument);
  CHECK_THROWS_AS(assumption1_monitor(t, 0.0, 3), InvalidArgument);
}

TEST_CASE("risk at a sample count") {
  RiskTrajectory t;
  for (int i = 0; i < 3; ++i) {
    TrajectoryRecord r;
    r.step = static_cast<std::uint64_t>(i);
    r.samples = 4.0 * i;
    r.excess_risk = 1.0 + i;
    t.records.push_back(r);
  }
  bool interpolated = true;
  CHECK(risk_at_samples(t, 4.0, &interpolated) == 2.0);
  CHECK_FALSE(interpolated);
  CHECK(risk_at_samples(t, 6.0, &interpolated) == doctest::Approx(2.5));
  CHECK(interpolated);
  CHECK_THROWS_AS(risk_at_samples(t, 9.0), InvalidArgument);
}

TEST_CASE("first cut step is the length of phase 0") {
  CHECK(first_cut_step(ScheduleSpec(0.1, 4.0, 2.0, 1.0, {100.0, 50.0})) == 25);
}
