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

#include <array>
#include <cmath>
#include <vector>

#include "seesaw/dynamics.hpp"
#include "seesaw/error.hpp"

using namespace seesaw;

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;

Mat3 mul(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Mat3 transpose(const Mat3& a) {
  Mat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t[i][j] = a[j][i];
  return t;
}

double trace(const Mat3& a) { return a[0][0] + a[1][1] + a[2][2]; }

// Rotation about a skew axis; any orthogonal Q works.
Mat3 rotation() {
  const double c1 = std::cos(0.7), s1 = std::sin(0.7);
  const double c2 = std::cos(-1.1), s2 = std::sin(-1.1);
  Mat3 rx{{{1, 0, 0}, {0, c1, -s1}, {0, s1, c1}}};
  Mat3 rz{{{c2, -s2, 0}, {s2, c2, 0}, {0, 0, 1}}};
  return mul(rz, rx);
}

// Second-moment recursion of mini-batch SGD with Gaussian inputs, written with
// full matrices in a non-eigen basis:
//   M' = (I - eta H) M (I - eta H) + (eta^2 / B) (H M H + Tr(H M) H) + (eta^2 sigma^2 / B) H
Mat3 full_step(const Mat3& m, const Mat3& h, double eta, double batch, double noise) {
  Mat3 a{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) a[i][j] = (i == j ? 1.0 : 0.0) - eta * h[i][j];
  Mat3 out = mul(mul(a, m), a);
  const Mat3 hmh = mul(mul(h, m), h);
  const double thm = trace(mul(h, m));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      out[i][j] += eta * eta / batch * (hmh[i][j] + thm * h[i][j]) + eta * eta * noise / batch * h[i][j];
  return out;
}

} // namespace

TEST_CASE("diagonal engine matches a full-matrix recursion in a rotated basis") {
  const std::vector<double> lambda = {2.0, 0.7, 0.05};
  const double noise = 0.3;
  const ProblemInstance problem(Spectrum(lambda), noise, {1.5, 0.4, 2.0}, {1.0, -0.2, 0.5});

  const Mat3 q = rotation();
  Mat3 diag_h{}, diag_m{};
  for (int i = 0; i < 3; ++i) {
    diag_h[i][i] = lambda[i];
    diag_m[i][i] = problem.initial_second_moment()[i];
  }
  const Mat3 h = mul(mul(q, diag_h), transpose(q));
  Mat3 m = mul(mul(q, diag_m), transpose(q));

  StateMoments state = StateMoments::initial(problem);
  const std::vector<std::pair<double, double>> steps = {{0.1, 1.0}, {0.2, 3.0}, {0.05, 2.5}, {0.3, 8.0}};
  for (int rep = 0; rep < 25; ++rep) {
    for (auto [eta, batch] : steps) {
      m = full_step(m, h, eta, batch, noise);
      advance(state, eta, batch, problem);
      const double expected = 0.5 * trace(mul(h, m));
      CHECK(risk(state, problem).excess == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("scalar constant-schedule recursion has a geometric closed form") {
  // d = 1: m' = a m + c, a = (1 - eta)^2 + 2 eta^2 / B, c = eta^2 sigma^2 / B.
  const double eta = 0.01, batch = 4.0, noise = 1.0, m0 = 1.0;
  const ProblemInstance problem = make_deterministic_problem(Spectrum({1.0}), noise, m0);
  const ScheduleSpec schedule = make_constant_schedule(eta, batch, {8000.0});
  const RiskTrajectory traj = evolve(problem, schedule);
  REQUIRE(traj.records.size() == 2001);
  const double a = (1 - eta) * (1 - eta) + 2 * eta * eta / batch;
  const double c = eta * eta * noise / batch;
  for (std::size_t t : {0u, 1u, 10u, 500u, 2000u}) {
    const double at = std::pow(a, static_cast<double>(t));
    const double m = at * m0 + c * (1 - at) / (1 - a);
    CHECK(traj.records[t].excess_risk == doctest::Approx(0.5 * m).epsilon(1e-12));
  }
  // Fixed point of the recursion.
  CHECK(traj.final_record().excess_risk == doctest::Approx(0.5 * c / (1 - a)).epsilon(1e-6));
}

TEST_CASE("bias and variance iterates add up and the mean contracts") {
  const ProblemInstance problem = make_deterministic_problem(make_power_law_spectrum(8, 1.0), 0.7, 2.0);
  StateMoments state = StateMoments::initial(problem);
  const double eta = 0.3;
  for (int t = 0; t < 400; ++t) {
    advance(state, eta, 1.0 + (t % 5), problem);
    for (std::size_t i = 0; i < state.m.size(); ++i) {
      CHECK(std::abs(state.m[i] - state.m_bias[i] - state.m_var[i]) <= 1e-12 * state.m[i]);
    }
  }
  for (std::size_t i = 0; i < state.u.size(); ++i) {
    const double l = problem.spectrum()[i];
    CHECK(state.u[i] == doctest::Approx(std::sqrt(2.0) * std::pow(1 - eta * l, 400)).epsilon(1e-10));
  }
  const RiskDecomposition r = risk(state, problem);
  CHECK(r.excess == doctest::Approx(r.bias + r.variance).epsilon(1e-13));
  CHECK(state.step == 400);
  CHECK(state.samples_consumed == 80 * (1 + 2 + 3 + 4 + 5));
}

TEST_CASE("noise-free problem started at the optimum stays there") {
  const ProblemInstance problem(Spectrum({1.0, 0.5}), 0.0, {0.0, 0.0}, {0.0, 0.0});
  const RiskTrajectory traj = evolve(problem, make_constant_schedule(0.1, 2.0, {200.0}));
  for (const auto& r : traj.records) CHECK(r.excess_risk == 0.0);
}

TEST_CASE("two half steps agree with one double-batch step to first order") {
  const ProblemInstance problem = make_deterministic_problem(make_power_law_spectrum(8, 1.0), 1.0);
  const StateMoments start = StateMoments::initial(problem);
  std::vector<double> gaps;
  const std::vector<double> etas = {1e-2, 5e-3, 2.5e-3};
  for (double eta : etas) {
    const StateMoments one = transition_apply(start, eta, 8.0, problem);
    const StateMoments two = transition_apply(transition_apply(start, eta / 2, 4.0, problem), eta / 2, 4.0, problem);
    gaps.push_back(std::abs(risk(one, problem).excess - risk(two, problem).excess));
  }
  for (std::size_t i = 1; i < gaps.size(); ++i) {
    const double slope = std::log(gaps[i - 1] / gaps[i]) / std::log(etas[i - 1] / etas[i]);
    CHECK(slope >= 1.9);
  }
}

TEST_CASE("recording, phases and decimation") {
  const ProblemInstance problem = make_deterministic_problem(Spectrum({1.0}), 1.0);
  const ScheduleSpec schedule(0.01, 2.0, 2.0, 1.0, {20.0, 30.0, 7.0});
  EvolveOptions options;
  options.full_record_limit = 10;
  options.decimation = 4;
  std::size_t calls = 0;
  options.observer = [&](const StateMoments&) { ++calls; };
  const RiskTrajectory traj = evolve(problem, schedule, options);
  // Phase steps 10, 15, ceil(3.5) = 4.
  CHECK(traj.serial_steps == 29);
  CHECK(traj.total_samples == 58.0);
  CHECK(calls == 30);
  REQUIRE(traj.phase_ends.size() == 3);
  CHECK(traj.phase_ends[0].step == 10);
  CHECK(traj.phase_ends[1].step == 25);
  CHECK(traj.phase_ends[2].step == 29);
  CHECK(traj.phase_ends[1].lr == doctest::Approx(0.005));
  std::vector<std::uint64_t> steps;
  for (const auto& r : traj.records) steps.push_back(r.step);
  CHECK(steps == std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 16, 20, 24, 25, 28, 29});
}

TEST_CASE("advance validates its arguments") {
  const ProblemInstance problem = make_deterministic_problem(Spectrum({1.0}), 1.0);
  StateMoments state = StateMoments::initial(problem);
  CHECK_THROWS_AS(advance(state, 0.0, 1.0, problem), InvalidArgument);
  CHECK_THROWS_AS(advance(state, 0.1, 0.5, problem), InvalidArgument);
  const ProblemInstance other = make_deterministic_problem(Spectrum({1.0, 1.0}), 1.0);
  CHECK_THROWS_AS(advance(state, 0.1, 1.0, other), InvalidArgument);
}

TEST_CASE("divergent schedules need an explicit override") {
  const ProblemInstance problem = make_deterministic_problem(Spectrum({1.0}), 1.0);
  const ScheduleSpec ramp(0.01, 1.0, 1.0, 4.0, {10.0, 40.0}, OptimizerFamily::nsgd);
  CHECK_THROWS_AS(evolve(problem, ramp), GuardFailure);
  EvolveOptions options;
  options.allow_divergent = true;
  const RiskTrajectory traj = evolve(problem, ramp, options);
  CHECK(traj.guard == GuardStatus::will_diverge);
  CHECK(traj.warnings.size() == 1);
}
