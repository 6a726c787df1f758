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

#include "seesaw/cli/experiment.hpp"

#include <cmath>

#include "seesaw/cli/svg_plot.hpp"
#include "seesaw/equivalence.hpp"
#include "seesaw/error.hpp"

namespace seesaw::cli {

namespace {

Series exact_series(const std::string& label, const RiskTrajectory& traj, bool by_samples) {
  Series s;
  s.label = label;
  for (const TrajectoryRecord& r : traj.records) {
    s.x.push_back(by_samples ? r.samples : static_cast<double>(r.step));
    s.y.push_back(r.excess_risk);
  }
  return s;
}

Series mc_series(const std::string& label, const McTrajectory& traj, bool by_samples) {
  Series s;
  s.label = label;
  for (const McRecord& r : traj.records) {
    s.x.push_back(by_samples ? r.samples : static_cast<double>(r.step));
    s.y.push_back(r.mean_excess_risk);
  }
  return s;
}

Json mc_summary(const McTrajectory& mc) {
  Json out;
  out["trials"] = mc.trials;
  out["recorded_steps"] = mc.records.size();
  out["final_mean_excess_risk"] = mc.records.back().mean_excess_risk;
  out["final_stderr_excess_risk"] = mc.records.back().stderr_excess_risk;
  out["serial_steps"] = mc.records.back().step;
  out["total_samples"] = mc.records.back().samples;
  Json batches = Json::array();
  for (auto b : mc.realized_batches) batches.push_back(b);
  out["realized_batches"] = batches;
  return out;
}

} // namespace

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOverrides& overrides) {
  ExperimentResult result;
  const Engine engine = overrides.engine.value_or(config.engine);
  const bool run_exact = engine != Engine::mc;
  const bool run_mc = engine != Engine::exact;
  std::optional<McConfig> mc_config = config.mc;
  if (run_mc && !mc_config) {
    throw ConfigError("run.mc", 0, "engine '" + std::string(to_string(engine)) +
                                       "' needs an mc block");
  }
  if (mc_config) {
    if (overrides.seed) mc_config->seed = *overrides.seed;
    if (overrides.workers) mc_config->workers = *overrides.workers;
  }
  const ProblemInstance& problem = config.problem;
  const std::uint64_t stride = config.output.record_stride;

  Json& summary = result.summary;
  summary["engine"] = to_string(engine);
  summary["family"] = to_string(config.family);
  if (config.family == OptimizerFamily::nsgd) summary["nsgd_mode"] = to_string(config.nsgd_mode);
  summary["dimension"] = problem.dimension();
  summary["trace"] = problem.spectrum().trace();
  summary["noise_variance"] = problem.noise_variance();
  summary["max_theorem_lr"] = max_theorem_lr(problem.spectrum());
  if (mc_config) summary["seed"] = mc_config->seed;

  std::vector<Series> by_samples;
  std::vector<Series> by_steps;
  Json schedules = Json::object();
  for (const NamedSchedule& named : config.schedules) {
    const ScheduleSpec schedule = named.schedule.with_family(config.family);
    const GuardStatus guard = check_divergence_guard(schedule);
    if (guard == GuardStatus::will_diverge && !overrides.allow_divergent) {
      throw GuardFailure("schedule '" + named.name + "' fails the divergence guard (lr_decay=" +
                         format_number(schedule.lr_decay_factor()) + ", batch_ramp=" +
                         format_number(schedule.batch_ramp_factor()) + ", family=" +
                         std::string(to_string(config.family)) + ")");
    }
    Json entry;
    entry["kind"] = named.kind;
    entry["lr_decay_factor"] = schedule.lr_decay_factor();
    entry["batch_ramp_factor"] = schedule.batch_ramp_factor();
    entry["equivalence_product"] = schedule.equivalence_product();
    entry["phases"] = schedule.num_phases();
    entry["guard"] = to_string(guard);
    if (guard == GuardStatus::will_diverge) {
      result.warnings.push_back("schedule '" + named.name + "' fails the divergence guard");
    }
    if (run_exact) {
      EvolveOptions options;
      options.allow_divergent = overrides.allow_divergent;
      const RiskTrajectory traj =
          config.family == OptimizerFamily::sgd
              ? evolve(problem, schedule, options)
              : nsgd_evolve(problem, schedule, config.nsgd_mode, options);
      Json exact = trajectory_summary(traj);
      if (problem.noise_variance() > 0.0 && schedule.num_phases() > 1) {
        const Assumption1Result a1 = assumption1_monitor(
            traj, std::sqrt(problem.noise_variance()), first_cut_step(schedule));
        exact["assumption1_observed_c"] = a1.observed_c;
        exact["assumption1_trivially_satisfied"] = a1.trivially_satisfied;
        exact["assumption1_exceeds_threshold"] = a1.exceeds_threshold;
      }
      entry["exact"] = exact;
      if (config.output.csv) result.artifacts[named.name + ".exact.csv"] = trajectory_csv(traj, stride);
      by_samples.push_back(exact_series(named.name + " (exact)", traj, true));
      by_steps.push_back(exact_series(named.name + " (exact)", traj, false));
    }
    if (run_mc) {
      const McTrajectory mc =
          config.family == OptimizerFamily::sgd
              ? run_sgd_trials(problem, schedule, *mc_config)
              : run_nsgd_trials(problem, schedule, *mc_config, config.nsgd_mode);
      entry["mc"] = mc_summary(mc);
      if (config.output.csv) result.artifacts[named.name + ".mc.csv"] = mc_csv(mc, stride);
      by_samples.push_back(mc_series(named.name + " (mc)", mc, true));
      by_steps.push_back(mc_series(named.name + " (mc)", mc, false));
    }
    schedules[named.name] = entry;
  }
  summary["schedules"] = schedules;

  if (config.compare.size() == 2) {
    const NamedSchedule& a = config.schedule(config.compare[0]);
    const NamedSchedule& b = config.schedule(config.compare[1]);
    CompareOptions options;
    options.lr_inflation = config.lr_inflation;
    options.nsgd_mode = config.nsgd_mode;
    options.allow_divergent = overrides.allow_divergent;
    const EquivalenceReport report =
        compare_procedures(problem, a.schedule, b.schedule, config.family, options);
    Json cmp = comparison_json(report);
    cmp["schedule_a"] = a.name;
    cmp["schedule_b"] = b.name;
    summary["comparison"] = cmp;
    if (config.output.json) result.artifacts["compare.json"] = dump_json(cmp);
    if (config.output.csv) result.artifacts["compare.csv"] = comparison_csv(report);
  } else if (overrides.require_compare) {
    throw ConfigError("run.compare", 0, "compare needs run.compare: [a, b]");
  }

  if (!result.warnings.empty()) summary["warnings"] = result.warnings;
  if (config.output.json) result.artifacts["summary.json"] = dump_json(summary);
  if (config.output.svg && !by_samples.empty()) {
    PlotSpec spec;
    spec.log_x = true;
    spec.log_y = true;
    spec.title = "Excess risk vs samples";
    spec.x_label = "samples";
    spec.y_label = "excess risk";
    result.artifacts["risk_vs_samples.svg"] = render_svg(by_samples, spec);
    spec.title = "Excess risk vs serial steps";
    spec.x_label = "serial steps";
    result.artifacts["risk_vs_steps.svg"] = render_svg(by_steps, spec);
  }
  return result;
}

} // namespace seesaw::cli
