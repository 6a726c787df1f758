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

#include "seesaw/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "seesaw/error.hpp"

namespace seesaw {

StateMoments StateMoments::initial(const ProblemInstance& problem) {
  StateMoments state;
  const auto m0 = problem.initial_second_moment();
  const auto u0 = problem.initial_mean_displacement();
  state.m.assign(m0.begin(), m0.end());
  state.m_bias = state.m;
  state.m_var.assign(problem.dimension(), 0.0);
  state.u.assign(u0.begin(), u0.end());
  return state;
}

void advance(StateMoments& state, double eta, double batch, const ProblemInstance& problem) {
  if (!(eta > 0.0) || !std::isfinite(eta)) {
    throw InvalidArgument("step size must be positive and finite");
  }
  if (!(batch >= 1.0) || !std::isfinite(batch)) {
    throw InvalidArgument("batch size must be >= 1");
  }
  const auto lambda = problem.spectrum().eigenvalues();
  const std::size_t d = lambda.size();
  if (state.m.size() != d || state.m_bias.size() != d || state.m_var.size() != d ||
      state.u.size() != d) {
    throw InvalidArgument("state dimension does not match problem");
  }

  const double coupling = eta * eta / batch;
  double trace_m = 0.0;
  double trace_bias = 0.0;
  double trace_var = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    trace_m += lambda[i] * state.m[i];
    trace_bias += lambda[i] * state.m_bias[i];
    trace_var += lambda[i] * state.m_var[i];
  }
  const double noise = coupling * problem.noise_variance();

  for (std::size_t i = 0; i < d; ++i) {
    const double l = lambda[i];
    const double shrink = 1.0 - eta * l;
    // (1 - eta l)^2 + eta^2 l^2 / B, written without the 1 - 2x cancellation.
    const double diag = shrink * shrink + coupling * l * l;
    state.m[i] = diag * state.m[i] + coupling * l * trace_m + noise * l;
    state.m_bias[i] = diag * state.m_bias[i] + coupling * l * trace_bias;
    state.m_var[i] = diag * state.m_var[i] + coupling * l * trace_var + noise * l;
    state.u[i] *= shrink;
  }
  state.step += 1;
  state.samples_consumed += batch;
}

StateMoments transition_apply(const StateMoments& state, double eta, double batch,
                              const ProblemInstance& problem) {
  StateMoments next = state;
  advance(next, eta, batch, problem);
  return next;
}

RiskDecomposition risk(const StateMoments& state, const ProblemInstance& problem) {
  const auto lambda = problem.spectrum().eigenvalues();
  if (state.m.size() != lambda.size() || state.m_bias.size() != lambda.size() ||
      state.m_var.size() != lambda.size()) {
    throw InvalidArgument("state dimension does not match problem");
  }
  RiskDecomposition out;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    out.excess += lambda[i] * state.m[i];
    out.bias += lambda[i] * state.m_bias[i];
    out.variance += lambda[i] * state.m_var[i];
  }
  out.excess *= 0.5;
  out.bias *= 0.5;
  out.variance *= 0.5;
  return out;
}

namespace {

TrajectoryRecord make_record(const StateMoments& state, const ProblemInstance& problem,
                             std::size_t phase, double lr, double batch, double effective_lr) {
  const RiskDecomposition r = risk(state, problem);
  TrajectoryRecord rec;
  rec.step = state.step;
  rec.samples = state.samples_consumed;
  rec.phase = phase;
  rec.lr = lr;
  rec.batch = batch;
  rec.effective_lr = effective_lr;
  rec.excess_risk = r.excess;
  rec.bias_risk = r.bias;
  rec.variance_risk = r.variance;
  return rec;
}

} // namespace

RiskTrajectory evolve_with_rule(const ProblemInstance& problem, const ScheduleSpec& schedule,
                                const StepRule& rule, const EvolveOptions& options) {
  if (!rule.step_size) {
    throw InvalidArgument("step rule needs a step_size function");
  }
  if (options.decimation == 0) {
    throw InvalidArgument("decimation must be >= 1");
  }
  RiskTrajectory traj;
  traj.family = schedule.family();
  traj.guard = check_divergence_guard(schedule);
  if (traj.guard == GuardStatus::will_diverge) {
    const std::string message =
        "schedule (lr_decay=" + std::to_string(schedule.lr_decay_factor()) +
        ", batch_ramp=" + std::to_string(schedule.batch_ramp_factor()) + ", family=" +
        std::string(to_string(schedule.family())) + ") fails the divergence guard";
    if (!options.allow_divergent) {
      throw GuardFailure(message);
    }
    traj.warnings.push_back(message);
  }
  traj.has_dominance_ratio = static_cast<bool>(rule.monitor);

  StateMoments state = StateMoments::initial(problem);
  if (options.observer) {
    options.observer(state);
  }

  const Phase first = schedule.phase(0);
  TrajectoryRecord initial = make_record(state, problem, 0, first.lr, first.batch,
                                         rule.step_size(state, first.lr, first.batch));
  if (rule.monitor) {
    initial.dominance_ratio = rule.monitor(state, first.batch);
    traj.min_dominance_ratio = initial.dominance_ratio;
  }
  traj.records.push_back(initial);

  for (std::size_t k = 0; k < schedule.num_phases(); ++k) {
    const Phase phase = schedule.phase(k);
    const std::uint64_t steps = schedule.phase_steps(k);
    for (std::uint64_t s = 0; s < steps; ++s) {
      const double eta = rule.step_size(state, phase.lr, phase.batch);
      advance(state, eta, phase.batch, problem);
      if (options.observer) {
        options.observer(state);
      }
      double ratio = std::numeric_limits<double>::quiet_NaN();
      if (rule.monitor) {
        ratio = rule.monitor(state, phase.batch);
        traj.min_dominance_ratio = std::min(traj.min_dominance_ratio, ratio);
      }
      const bool phase_end = s + 1 == steps;
      const bool keep =
          state.step <= options.full_record_limit || state.step % options.decimation == 0;
      if (keep || phase_end) {
        TrajectoryRecord rec = make_record(state, problem, k, phase.lr, phase.batch, eta);
        rec.dominance_ratio = ratio;
        traj.records.push_back(rec);
        if (phase_end) {
          traj.phase_ends.push_back(rec);
        }
      }
    }
  }
  traj.serial_steps = state.step;
  traj.total_samples = state.samples_consumed;
  return traj;
}

RiskTrajectory evolve(const ProblemInstance& problem, const ScheduleSpec& schedule,
                      const EvolveOptions& options) {
  StepRule rule;
  rule.step_size = [](const StateMoments&, double lr, double) { return lr; };
  return evolve_with_rule(problem, schedule, rule, options);
}

} // namespace seesaw
