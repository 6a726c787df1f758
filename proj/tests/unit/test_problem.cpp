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
#include "seesaw/problem.hpp"

using namespace seesaw;

TEST_CASE("power-law spectrum matches i^-a") {
  const Spectrum s = make_power_law_spectrum(4, 1.0);
  REQUIRE(s.dimension() == 4);
  CHECK(s[0] == 1.0);
  CHECK(s[1] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(s[3] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(s.trace() == doctest::Approx(1.0 + 0.5 + 1.0 / 3.0 + 0.25).epsilon(1e-15));
  CHECK(max_theorem_lr(s) == doctest::Approx(0.01 / s.trace()).epsilon(1e-15));

  const Spectrum flat = make_power_law_spectrum(64, 0.0);
  CHECK(flat.trace() == 64.0);
  CHECK(max_theorem_lr(flat) == doctest::Approx(0.01 / 64.0));
}

TEST_CASE("spectrum rejects bad eigenvalues") {
  CHECK_THROWS_AS(Spectrum({}), InvalidArgument);
  CHECK_THROWS_AS(Spectrum({1.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(Spectrum({1.0, -1.0}), InvalidArgument);
  CHECK_THROWS_AS(Spectrum({0.5, 1.0}), InvalidArgument);
  CHECK_THROWS_AS(Spectrum({NAN}), InvalidArgument);
  CHECK_THROWS_AS(make_power_law_spectrum(0, 1.0), InvalidArgument);
}

TEST_CASE("initialisation policies") {
  const Spectrum s = make_power_law_spectrum(3, 2.0);
  const ProblemInstance det = make_deterministic_problem(s, 0.5, 4.0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(det.initial_second_moment()[i] == 4.0);
    CHECK(det.initial_mean_displacement()[i] == 2.0);
  }
  const ProblemInstance gauss = make_gaussian_init_problem(s, 0.5, 4.0);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(gauss.initial_second_moment()[i] == 4.0);
    CHECK(gauss.initial_mean_displacement()[i] == 0.0);
  }
  CHECK(det.with_noise_variance(2.0).noise_variance() == 2.0);
}

TEST_CASE("problem validation") {
  const Spectrum s({1.0, 0.5});
  CHECK_THROWS_AS(ProblemInstance(s, -1.0, {1.0, 1.0}, {0.0, 0.0}), InvalidArgument);
  CHECK_THROWS_AS(ProblemInstance(s, 1.0, {1.0}, {0.0, 0.0}), InvalidArgument);
  // E[d^2] >= E[d]^2.
  CHECK_THROWS_AS(ProblemInstance(s, 1.0, {1.0, 0.1}, {0.0, 1.0}), InvalidArgument);
  CHECK_NOTHROW(ProblemInstance(s, 0.0, {0.0, 0.0}, {0.0, 0.0}));
}
