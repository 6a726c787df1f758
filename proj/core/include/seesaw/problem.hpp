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
#include <span>
#include <vector>

namespace seesaw {

/// Eigenvalues of the data covariance, sorted in non-increasing order.
///
/// All computation happens in the eigenbasis of the covariance, so the
/// spectrum is the only representation of H that the library keeps.
class Spectrum {
public:
  /// Validates positivity, finiteness and ordering; throws InvalidArgument.
  explicit Spectrum(std::vector<double> eigenvalues);

  std::span<const double> eigenvalues() const noexcept { return eigenvalues_; }
  std::size_t dimension() const noexcept { return eigenvalues_.size(); }
  double trace() const noexcept { return trace_; }
  double operator[](std::size_t i) const noexcept { return eigenvalues_[i]; }

private:
  std::vector<double> eigenvalues_;
  double trace_ = 0.0;
};

/// lambda_i = scale * i^(-exponent), i = 1..d.
Spectrum make_power_law_spectrum(std::size_t dimension, double exponent,
                                 double scale = 1.0);

/// Largest base learning rate admitted by the equivalence results: 0.01 / Tr(H).
double max_theorem_lr(const Spectrum& spectrum) noexcept;

/// One noisy linear regression task, expressed in the covariance eigenbasis.
///
/// `initial_second_moment` is diag(E[delta_0 delta_0^T]) and
/// `initial_mean_displacement` is E[delta_0], both rotated into the eigenbasis.
class ProblemInstance {
public:
  ProblemInstance(Spectrum spectrum, double noise_variance,
                  std::vector<double> initial_second_moment,
                  std::vector<double> initial_mean_displacement);

  const Spectrum& spectrum() const noexcept { return spectrum_; }
  std::size_t dimension() const noexcept { return spectrum_.dimension(); }
  double noise_variance() const noexcept { return noise_variance_; }
  std::span<const double> initial_second_moment() const noexcept { return m0_; }
  std::span<const double> initial_mean_displacement() const noexcept { return u0_; }

  /// Same task with the noise level replaced.
  ProblemInstance with_noise_variance(double noise_variance) const;

private:
  Spectrum spectrum_;
  double noise_variance_;
  std::vector<double> m0_;
  std::vector<double> u0_;
};

/// delta_0 deterministic with every coordinate equal to sqrt(scale): m0 = u0^2 = scale.
ProblemInstance make_deterministic_problem(Spectrum spectrum, double noise_variance,
                                           double init_scale = 1.0);

/// delta_0 ~ N(0, scale * I): m0 = scale, u0 = 0.
ProblemInstance make_gaussian_init_problem(Spectrum spectrum, double noise_variance,
                                           double init_scale = 1.0);

} // namespace seesaw
