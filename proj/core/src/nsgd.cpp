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

#include "seesaw/nsgd.hpp"

#include <cmath>

#include "seesaw/error.hpp"

namespace seesaw {

GradNormBreakdown expected_grad_sq_norm(const StateMoments& state, const ProblemInstance& problem,
                                        double batch) {
  if (!(batch >= 1.0) || !std::isfinite(batch)) {
    throw InvalidArgument("batch size must be >= 1");
  }
  const auto lambda = problem.spectrum().eigenvalues();
  if (state.m.size() != lambda.size() || state.u.size() != lambda.size()) {
    throw InvalidArgument("state dimension does not match problem");
  }
  const double trace = problem.spectrum().trace();
  double lambda_sq_m = 0.0;
  double lambda_m = 0.0;
  double lambda_sq_u_sq = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    const double l = lambda[i];
    lambda_sq_m += l * l * state.m[i];
    lambda_m += l * state.m[i];
    lambda_sq_u_sq += l * l * state.u[i] * state.u[i];
  }
  GradNormBreakdown out;
  out.additive_term = problem.noise_variance() * trace / batch;
  out.covariance_term = (2.0 * lambda_sq_m + trace * lambda_m) / batch;
  out.mean_term = (1.0 - 1.0 / batch) * lambda_sq_u_sq;
  out.total = out.additive_term + out.covariance_term + out.mean_term;
  return out;
}

double variance_dominance_ratio(const GradNormBreakdown& breakdown) {
  if (!(breakdown.total > 0.0)) {
    throw InvalidArgument("dominance ratio undefined for a zero gradient norm");
  }
  return breakdown.additive_term / breakdown.total;
}

double effective_lr(double eta, double batch, const ProblemInstance& problem) {
  if (!(problem.noise_variance() > 0.0)) {
    throw InvalidArgument("variance-dominated step size needs sigma > 0");
  }
  if (!(eta > 0.0) || !(batch >= 1.0)) {
    throw InvalidArgument("effective_lr needs eta > 0 and batch >= 1");
  }
  return eta * std::sqrt(batch) /
         (std::sqrt(problem.noise_variance()) * std::sqrt(problem.spectrum().trace()));
}

std::string_view to_string(NsgdMode mode) noexcept {
  return mode == NsgdMode::variance_dominated ? "variance_dominated" : "full_denominator";
}

RiskTrajectory nsgd_evolve(const ProblemInstance& problem, const ScheduleSpec& schedule,
                           NsgdMode mode, const EvolveOptions& options) {
  if (mode == NsgdMode::variance_dominated && !(problem.noise_variance() > 0.0)) {
    throw InvalidArgument("variance-dominated NSGD needs sigma > 0");
  }
  StepRule rule;
  if (mode == NsgdMode::variance_dominated) {
    rule.step_size = [&problem](const StateMoments&, double lr, double batch) {
      return effective_lr(lr, batch, problem);
    };
  } else {
    rule.step_size = [&problem](const StateMoments& state, double lr, double batch) {
      const double total = expected_grad_sq_norm(state, problem, batch).total;
      if (!(total > 0.0)) {
        throw InvalidArgument("NSGD denominator vanished (sigma = 0 at the optimum)");
      }
      return lr / std::sqrt(total);
    };
  }
  rule.monitor = [&problem](const StateMoments& state, double batch) {
    const GradNormBreakdown b = expected_grad_sq_norm(state, problem, batch);
    return b.total > 0.0 ? variance_dominance_ratio(b) : 0.0;
  };
  RiskTrajectory traj = evolve_with_rule(problem, schedule.with_family(OptimizerFamily::nsgd),
                                         rule, options);
  return traj;
}

NgdCycle ngd_1d_cycle(double eta, double h, double x0, std::uint64_t steps) {
  if (!(eta > 0.0) || !(h > 0.0)) {
    throw InvalidArgument("NGD toy needs eta > 0 and h > 0");
  }
  if (steps == 0) {
    throw InvalidArgument("NGD toy needs at least one step");
  }
  const double stride = eta * h;
  // Iterates are x0 - n * stride for an integer net count n; tracking n
  // avoids accumulating rounding error across steps.
  std::int64_t net = 0;
  auto position = [&](std::int64_t n) { return x0 - static_cast<double>(n) * stride; };
  NgdCycle out;
  std::array<double, 4> window{x0, x0, x0, x0};
  for (std::uint64_t t = 0; t < steps; ++t) {
    const double x = position(net);
    if (x > 0.0) {
      ++net;
    } else if (x < 0.0) {
      --net;
    }
    window[t % 4] = position(net);
  }
  // Oldest first.
  for (std::size_t i = 0; i < 4; ++i) {
    out.final_points[i] = window[(steps + i) % 4];
  }
  for (double x : out.final_points) {
    out.amplitude = std::max(out.amplitude, std::abs(x));
  }
  return out;
}

} // namespace seesaw
