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

#include "seesaw/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "seesaw/dynamics.hpp"
#include "seesaw/error.hpp"

namespace seesaw {

namespace {

// Independent stream per (seed, trial); trial scheduling order cannot leak
// into the draws.
std::mt19937_64 trial_engine(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                    0x5eed5a3du};
  return std::mt19937_64(seq);
}

void validate(const ProblemInstance& problem, const McConfig& config) {
  if (config.trials < 2) {
    throw InvalidArgument("Monte Carlo needs at least 2 trials for a standard error");
  }
  if (config.record_every == 0) {
    throw InvalidArgument("record_every must be >= 1");
  }
  if (problem.dimension() > config.max_dimension) {
    throw InvalidArgument("problem dimension exceeds the Monte Carlo max_dimension guard");
  }
}

std::vector<std::size_t> recording_grid(std::size_t total_steps, std::uint64_t every) {
  std::vector<std::size_t> grid;
  for (std::size_t t = 0; t <= total_steps; t += every) {
    grid.push_back(t);
  }
  if (grid.back() != total_steps) {
    grid.push_back(total_steps);
  }
  return grid;
}

void run_one_trial(const ProblemInstance& problem, const std::vector<PlannedStep>& plan,
                   const std::vector<std::size_t>& grid, std::uint64_t seed, std::uint64_t trial,
                   double* risks_out) {
  const auto lambda = problem.spectrum().eigenvalues();
  const auto m0 = problem.initial_second_moment();
  const auto u0 = problem.initial_mean_displacement();
  const std::size_t d = lambda.size();
  const double sigma = std::sqrt(problem.noise_variance());

  std::mt19937_64 engine = trial_engine(seed, trial);
  std::normal_distribution<double> normal(0.0, 1.0);

  std::vector<double> scale(d);
  for (std::size_t i = 0; i < d; ++i) {
    scale[i] = std::sqrt(lambda[i]);
  }

  std::vector<double> delta(d);
  for (std::size_t i = 0; i < d; ++i) {
    const double spread = m0[i] - u0[i] * u0[i];
    if (spread <= 1e-12 * m0[i]) {
      delta[i] = std::copysign(std::sqrt(m0[i]), u0[i]);
    } else {
      delta[i] = u0[i] + std::sqrt(spread) * normal(engine);
    }
  }

  auto excess = [&]() {
    double acc = 0.0;
    for (std::size_t i = 0; i < d; ++i) {
      acc += lambda[i] * delta[i] * delta[i];
    }
    return 0.5 * acc;
  };

  std::size_t next_record = 0;
  if (grid[next_record] == 0) {
    risks_out[next_record++] = excess();
  }
  std::vector<double> grad(d);
  std::vector<double> x(d);
  for (std::size_t t = 0; t < plan.size(); ++t) {
    const PlannedStep& step = plan[t];
    std::fill(grad.begin(), grad.end(), 0.0);
    for (std::uint64_t b = 0; b < step.batch; ++b) {
      double residual = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        x[i] = scale[i] * normal(engine);
        residual += x[i] * delta[i];
      }
      residual -= sigma * normal(engine);
      for (std::size_t i = 0; i < d; ++i) {
        grad[i] += residual * x[i];
      }
    }
    const double factor = step.step_size / static_cast<double>(step.batch);
    for (std::size_t i = 0; i < d; ++i) {
      delta[i] -= factor * grad[i];
    }
    if (next_record < grid.size() && grid[next_record] == t + 1) {
      risks_out[next_record++] = excess();
    }
  }
}

} // namespace

McTrajectory run_planned_trials(const ProblemInstance& problem, const std::vector<PlannedStep>& plan,
                                std::size_t num_phases, const McConfig& config) {
  validate(problem, config);
  const std::vector<std::size_t> grid = recording_grid(plan.size(), config.record_every);
  const std::size_t width = grid.size();
  const std::uint64_t trials = config.trials;
  std::vector<double> risks(trials * width);

  const unsigned workers =
      std::max(1u, std::min<unsigned>(config.workers, static_cast<unsigned>(trials)));
  auto work = [&](unsigned worker) {
    for (std::uint64_t trial = worker; trial < trials; trial += workers) {
      run_one_trial(problem, plan, grid, config.seed, trial, risks.data() + trial * width);
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back(work, w);
    }
  }

  McTrajectory out;
  out.trials = trials;
  out.realized_batches.assign(num_phases, 0);
  std::vector<double> samples_at(plan.size() + 1, 0.0);
  for (std::size_t t = 0; t < plan.size(); ++t) {
    samples_at[t + 1] = samples_at[t] + static_cast<double>(plan[t].batch);
    if (plan[t].phase < num_phases) {
      out.realized_batches[plan[t].phase] = plan[t].batch;
    }
  }

  const double n = static_cast<double>(trials);
  out.records.reserve(width);
  for (std::size_t j = 0; j < width; ++j) {
    double sum = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      sum += risks[trial * width + j];
    }
    const double mean = sum / n;
    double sq = 0.0;
    for (std::uint64_t trial = 0; trial < trials; ++trial) {
      const double diff = risks[trial * width + j] - mean;
      sq += diff * diff;
    }
    McRecord rec;
    rec.step = grid[j];
    rec.samples = samples_at[grid[j]];
    // Record the step that produced this state; step 0 reports the first step.
    const PlannedStep* producing =
        plan.empty() ? nullptr : &plan[grid[j] == 0 ? 0 : grid[j] - 1];
    if (producing != nullptr) {
      rec.phase = producing->phase;
      rec.lr = producing->lr;
      rec.batch = producing->batch;
    }
    rec.mean_excess_risk = mean;
    rec.stderr_excess_risk = std::sqrt(sq / (n - 1.0)) / std::sqrt(n);
    out.records.push_back(rec);
  }
  return out;
}

std::vector<PlannedStep> sgd_plan(const ScheduleSpec& schedule) {
  std::vector<PlannedStep> plan;
  for (std::size_t k = 0; k < schedule.num_phases(); ++k) {
    const Phase phase = schedule.phase(k);
    const std::uint64_t batch = realized_batch(phase.batch);
    const std::uint64_t steps = steps_for_samples(phase.samples, static_cast<double>(batch));
    for (std::uint64_t s = 0; s < steps; ++s) {
      plan.push_back(PlannedStep{phase.lr, batch, k, phase.lr});
    }
  }
  return plan;
}

std::vector<PlannedStep> nsgd_plan(const ProblemInstance& problem, const ScheduleSpec& schedule,
                                   NsgdMode mode) {
  if (!(problem.noise_variance() > 0.0)) {
    throw InvalidArgument("Monte Carlo NSGD needs sigma > 0");
  }
  std::vector<PlannedStep> plan = sgd_plan(schedule);
  StateMoments state = StateMoments::initial(problem);
  for (PlannedStep& step : plan) {
    const auto batch = static_cast<double>(step.batch);
    if (mode == NsgdMode::variance_dominated) {
      step.step_size = effective_lr(step.lr, batch, problem);
    } else {
      step.step_size = step.lr / std::sqrt(expected_grad_sq_norm(state, problem, batch).total);
      advance(state, step.step_size, batch, problem);
    }
  }
  return plan;
}

McTrajectory run_sgd_trials(const ProblemInstance& problem, const ScheduleSpec& schedule,
                            const McConfig& config) {
  return run_planned_trials(problem, sgd_plan(schedule), schedule.num_phases(), config);
}

McTrajectory run_nsgd_trials(const ProblemInstance& problem, const ScheduleSpec& schedule,
                             const McConfig& config, NsgdMode mode) {
  return run_planned_trials(problem, nsgd_plan(problem, schedule, mode), schedule.num_phases(),
                            config);
}

} // namespace seesaw
