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

#include "seesaw/problem.hpp"

#include <cmath>
#include <string>

#include "seesaw/error.hpp"

namespace seesaw {

Spectrum::Spectrum(std::vector<double> eigenvalues) : eigenvalues_(std::move(eigenvalues)) {
  if (eigenvalues_.empty()) {
    throw InvalidArgument("spectrum must have at least one eigenvalue");
  }
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    const double value = eigenvalues_[i];
    if (!std::isfinite(value) || value <= 0.0) {
      throw InvalidArgument("eigenvalue " + std::to_string(i) + " must be positive and finite");
    }
    if (i > 0 && value > eigenvalues_[i - 1]) {
      throw InvalidArgument("eigenvalues must be sorted in non-increasing order");
    }
    trace_ += value;
  }
  if (!std::isfinite(trace_)) {
    throw InvalidArgument("spectrum trace is not finite");
  }
}

Spectrum make_power_law_spectrum(std::size_t dimension, double exponent, double scale) {
  if (dimension == 0) {
    throw InvalidArgument("power-law spectrum needs d >= 1");
  }
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw InvalidArgument("power-law spectrum needs a positive scale");
  }
  if (!(exponent >= 0.0) || !std::isfinite(exponent)) {
    throw InvalidArgument("power-law exponent must be non-negative");
  }
  std::vector<double> values(dimension);
  for (std::size_t i = 0; i < dimension; ++i) {
    values[i] = scale * std::pow(static_cast<double>(i + 1), -exponent);
  }
  return Spectrum(std::move(values));
}

double max_theorem_lr(const Spectrum& spectrum) noexcept { return 0.01 / spectrum.trace(); }

ProblemInstance::ProblemInstance(Spectrum spectrum, double noise_variance,
                                 std::vector<double> initial_second_moment,
                                 std::vector<double> initial_mean_displacement)
    : spectrum_(std::move(spectrum)), noise_variance_(noise_variance),
      m0_(std::move(initial_second_moment)), u0_(std::move(initial_mean_displacement)) {
  if (!(noise_variance_ >= 0.0) || !std::isfinite(noise_variance_)) {
    throw InvalidArgument("noise variance must be non-negative and finite");
  }
  const std::size_t d = spectrum_.dimension();
  if (m0_.size() != d || u0_.size() != d) {
    throw InvalidArgument("initial moments must have length " + std::to_string(d));
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (!(m0_[i] >= 0.0) || !std::isfinite(m0_[i]) || !std::isfinite(u0_[i])) {
      throw InvalidArgument("initial moments must be finite, second moment non-negative");
    }
    // A second moment bounds its squared mean; allow rounding from sqrt().
    const double mean_sq = u0_[i] * u0_[i];
    if (mean_sq > m0_[i] * (1.0 + 1e-12)) {
      throw InvalidArgument("coordinate " + std::to_string(i) +
                            ": initial second moment is smaller than squared mean");
    }
  }
}

ProblemInstance ProblemInstance::with_noise_variance(double noise_variance) const {
  return ProblemInstance(spectrum_, noise_variance, m0_, u0_);
}

ProblemInstance make_deterministic_problem(Spectrum spectrum, double noise_variance,
                                           double init_scale) {
  if (!(init_scale >= 0.0)) {
    throw InvalidArgument("init scale must be non-negative");
  }
  const std::size_t d = spectrum.dimension();
  return ProblemInstance(std::move(spectrum), noise_variance, std::vector<double>(d, init_scale),
                         std::vector<double>(d, std::sqrt(init_scale)));
}

ProblemInstance make_gaussian_init_problem(Spectrum spectrum, double noise_variance,
                                           double init_scale) {
  if (!(init_scale >= 0.0)) {
    throw InvalidArgument("init scale must be non-negative");
  }
  const std::size_t d = spectrum.dimension();
  return ProblemInstance(std::move(spectrum), noise_variance, std::vector<double>(d, init_scale),
                         std::vector<double>(d, 0.0));
}

} // namespace seesaw
