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

#include "seesaw/cli/suites.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>

#include "seesaw/equivalence.hpp"
#include "seesaw/error.hpp"
#include "seesaw/montecarlo.hpp"
#include "seesaw/nsgd.hpp"
#include "seesaw/problem.hpp"
#include "seesaw/schedules.hpp"

namespace seesaw::cli {

namespace {

struct AlphaBeta {
  std::string tag;
  double alpha;
  double beta;
};

// Equivalence-line points: constant alpha * sqrt(beta) = 2.
const std::vector<AlphaBeta>& equivalence_line_points() {
  static const std::vector<AlphaBeta> points = {
      {"a2_b1", 2.0, 1.0},
      {"a2^0.75_b2^0.5", std::pow(2.0, 0.75), std::pow(2.0, 0.5)},
      {"a2^0.5_b2", std::pow(2.0, 0.5), 2.0},
      {"a2^0.25_b2^1.5", std::pow(2.0, 0.25), std::pow(2.0, 1.5)},
      {"a1_b4", 1.0, 4.0},
  };
  return points;
}

EvolveOptions evolve_options(const SuiteOptions& options, bool allow_divergent = false) {
  EvolveOptions out;
  out.observer = options.observer;
  out.allow_divergent = allow_divergent;
  return out;
}

CompareOptions compare_options(const SuiteOptions& options, bool allow_divergent = false) {
  CompareOptions out;
  out.observer = options.observer;
  out.allow_divergent = allow_divergent;
  return out;
}

Json number_array(const std::vector<double>& values) {
  Json out = Json::array();
  for (double v : values) out.push_back(v);
  return out;
}

void finish(SuiteResult& result) {
  result.passed = result.failures.empty();
  result.summary["passed"] = result.passed;
  result.summary["failures"] = result.failures;
  result.artifacts["summary.json"] = dump_json(result.summary);
}

// ---------------------------------------------------------------- speedup

SuiteResult speedup_suite(const SuiteOptions&) {
  SuiteResult result;
  result.name = "speedup";
  const std::uint64_t total_steps = 10'000;
  const std::vector<double> alphas = {2.0, std::pow(2.0, 0.5), std::pow(2.0, 0.25),
                                      std::pow(2.0, 0.125)};
  result.summary = speedup_report(total_steps, alphas);

  const auto& rows = result.summary["discrete"];
  double previous = std::numeric_limits<double>::infinity();
  for (const auto& row : rows) {
    const double ratio = row["serial_step_ratio"].get<double>();
    if (!(ratio < previous)) {
      result.failures.push_back("serial-step ratio does not decrease with alpha");
    }
    previous = ratio;
  }
  const double finest = rows.back()["abs_diff_to_limit"].get<double>();
  result.summary["tolerance_abs"] = 0.03;
  if (!(finest <= 0.03)) {
    result.failures.push_back("ratio at the finest alpha is not within 0.03 of 2/pi");
  }
  finish(result);
  return result;
}

// ---------------------------------------------------------------- oracle agreement

struct OracleCase {
  std::string name;
  ProblemInstance problem;
  ScheduleSpec schedule;
  bool nsgd = false;
  NsgdMode mode = NsgdMode::variance_dominated;
};

std::vector<OracleCase> oracle_cases() {
  std::vector<OracleCase> cases;
  const double sqrt2 = std::numbers::sqrt2;
  {
    auto p = make_deterministic_problem(Spectrum({1.0}), 1.0);
    cases.push_back({"d1_constant_sgd", p, make_constant_schedule(0.01, 4.0, {8000.0}), false, {}});
  }
  {
    auto p = make_deterministic_problem(Spectrum({1.0}), 1.0);
    CutPlan plan{{500, 1000, 1500}, 2000, 2.0};
    cases.push_back({"d1_seesaw_sgd", p, seesaw_from_cut_plan(plan, 0.01, 2.0, OptimizerFamily::sgd),
                     false, {}});
  }
  {
    auto p = make_deterministic_problem(make_power_law_spectrum(2, 1.0), 1.0);
    cases.push_back({"d2_constant_sgd", p, make_constant_schedule(0.05, 2.0, {4000.0}), false, {}});
  }
  {
    auto p = make_deterministic_problem(make_power_law_spectrum(2, 1.0), 1.0);
    const double tr = p.spectrum().trace();
    // Effective step 0.05 in every phase.
    const double eta = 0.05 * std::sqrt(tr) / std::sqrt(2.0);
    ScheduleSpec s(eta, 2.0, sqrt2, 2.0, {1000.0, 1000.0, 1000.0, 1000.0}, OptimizerFamily::nsgd);
    cases.push_back({"d2_seesaw_nsgd_vd", p, s, true, NsgdMode::variance_dominated});
  }
  {
    auto p = make_deterministic_problem(make_power_law_spectrum(8, 1.0), 1.0);
    ScheduleSpec s = make_constant_schedule(0.02, 4.0, {6000.0}, OptimizerFamily::nsgd);
    cases.push_back({"d8_constant_nsgd_full", p, s, true, NsgdMode::full_denominator});
  }
  {
    auto p = make_gaussian_init_problem(make_power_law_spectrum(8, 1.0), 0.5);
    CutPlan plan{{400, 800, 1200}, 1600, 2.0};
    cases.push_back({"d8_seesaw_sgd_gaussian", p,
                     seesaw_from_cut_plan(plan, 0.05, 2.0, OptimizerFamily::sgd), false, {}});
  }
  return cases;
}

SuiteResult oracle_agreement_suite(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "oracle-agreement";
  const std::uint64_t trials = 1000;
  const double required_fraction = 0.99;
  result.summary["trials"] = trials;
  result.summary["seed"] = options.seed;
  result.summary["stderr_multiple"] = 3.0;
  result.summary["required_fraction"] = required_fraction;
  Json cases = Json::array();
  for (const OracleCase& c : oracle_cases()) {
    McConfig config;
    config.trials = trials;
    config.seed = options.seed;
    config.workers = options.workers;
    const RiskTrajectory exact = c.nsgd ? nsgd_evolve(c.problem, c.schedule, c.mode, evolve_options(options))
                                        : evolve(c.problem, c.schedule, evolve_options(options));
    const McTrajectory mc = c.nsgd ? run_nsgd_trials(c.problem, c.schedule, config, c.mode)
                                   : run_sgd_trials(c.problem, c.schedule, config);
    std::uint64_t agree = 0;
    double worst_z = 0.0;
    for (const McRecord& rec : mc.records) {
      if (rec.step >= exact.records.size() || exact.records[rec.step].step != rec.step) {
        throw InvalidArgument("exact and Monte Carlo recording grids do not align");
      }
      const double target = exact.records[rec.step].excess_risk;
      const double gap = std::abs(rec.mean_excess_risk - target);
      // Floor absorbs the rounding of sqrt(m0)^2 at deterministic steps.
      const double floor = 1e-12 * std::abs(target);
      if (gap <= 3.0 * rec.stderr_excess_risk + floor) {
        ++agree;
      }
      if (gap > floor && rec.stderr_excess_risk > 0.0) {
        worst_z = std::max(worst_z, gap / rec.stderr_excess_risk);
      }
    }
    const double fraction = static_cast<double>(agree) / static_cast<double>(mc.records.size());
    Json row;
    row["name"] = c.name;
    row["dimension"] = c.problem.dimension();
    row["family"] = c.nsgd ? "nsgd" : "sgd";
    if (c.nsgd) row["nsgd_mode"] = to_string(c.mode);
    row["recorded_steps"] = mc.records.size();
    row["agreeing_steps"] = agree;
    row["fraction"] = fraction;
    row["max_z"] = worst_z;
    Json batches = Json::array();
    for (auto b : mc.realized_batches) batches.push_back(b);
    row["realized_batches"] = batches;
    row["final_exact"] = exact.final_record().excess_risk;
    row["final_mc_mean"] = mc.records.back().mean_excess_risk;
    row["final_mc_stderr"] = mc.records.back().stderr_excess_risk;
    row["passed"] = fraction >= required_fraction;
    if (fraction < required_fraction) {
      result.failures.push_back(c.name + ": only " + std::to_string(fraction) +
                                " of steps within 3 stderr");
    }
    cases.push_back(row);
    result.artifacts[c.name + ".exact.csv"] = trajectory_csv(exact);
    result.artifacts[c.name + ".mc.csv"] = mc_csv(mc);
  }
  result.summary["cases"] = cases;
  finish(result);
  return result;
}

// ---------------------------------------------------------------- theorem / corollary

ProblemInstance reference_problem() {
  return make_deterministic_problem(make_power_law_spectrum(8, 1.0), 1.0);
}

constexpr std::size_t kPhases = 5;
constexpr double kPhaseSamples = 8000.0;
constexpr double kBaseBatch = 4.0;

ScheduleSpec phased(double eta, double alpha, double beta, OptimizerFamily family) {
  return ScheduleSpec(eta, kBaseBatch, alpha, beta, std::vector<double>(kPhases, kPhaseSamples),
                      family);
}

Json comparison_row(const std::string& tag, const EquivalenceReport& report) {
  Json row = comparison_json(report);
  row["pair"] = tag;
  return row;
}

void check_band(SuiteResult& result, const std::string& tag, const EquivalenceReport& report,
                double limit) {
  if (!(report.uniform_constant <= limit)) {
    result.failures.push_back(tag + ": uniform constant " + std::to_string(report.uniform_constant) +
                              " exceeds " + std::to_string(limit));
  }
  if (!report.sandwich_holds(report.uniform_constant)) {
    result.failures.push_back(tag + ": sandwich ordering fails");
  }
  if (!(report.ratio_spread() <= limit)) {
    result.failures.push_back(tag + ": ratio spread exceeds " + std::to_string(limit));
  }
}

SuiteResult theorem_sgd_suite(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "theorem-sgd";
  const ProblemInstance problem = reference_problem();
  const double eta = 0.9 * max_theorem_lr(problem.spectrum());
  const double limit = 10.0;
  const double sqrt2 = std::numbers::sqrt2;
  // (ramp-heavy A, decay-heavy B) with alpha * beta matched.
  const std::vector<std::pair<AlphaBeta, AlphaBeta>> pairs = {
      {{"a1_b2", 1.0, 2.0}, {"a2_b1", 2.0, 1.0}},
      {{"a2^0.5_b2", sqrt2, 2.0}, {"a2^1.5_b1", 2.0 * sqrt2, 1.0}},
      {{"a2_b2", 2.0, 2.0}, {"a4_b1", 4.0, 1.0}},
  };
  result.summary["eta"] = eta;
  result.summary["max_theorem_lr"] = max_theorem_lr(problem.spectrum());
  result.summary["phases"] = kPhases;
  result.summary["phase_samples"] = kPhaseSamples;
  result.summary["base_batch"] = kBaseBatch;
  result.summary["band_limit"] = limit;
  Json rows = Json::array();
  for (const auto& [a, b] : pairs) {
    const std::string tag = a.tag + "_vs_" + b.tag;
    const EquivalenceReport report =
        compare_procedures(problem, phased(eta, a.alpha, a.beta, OptimizerFamily::sgd),
                           phased(eta, b.alpha, b.beta, OptimizerFamily::sgd), OptimizerFamily::sgd,
                           compare_options(options));
    check_band(result, tag, report, limit);
    rows.push_back(comparison_row(tag, report));
    result.artifacts["compare_" + tag + ".csv"] = comparison_csv(report);
  }
  result.summary["pairs"] = rows;
  finish(result);
  return result;
}

SuiteResult corollary_nsgd_suite(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "corollary-nsgd";
  const ProblemInstance problem = reference_problem();
  const double target = 0.9 * max_theorem_lr(problem.spectrum());
  const double eta = target * std::sqrt(problem.noise_variance() * problem.spectrum().trace()) /
                     std::sqrt(kBaseBatch);
  const double limit = 10.0;
  const EquivalenceReport report = compare_procedures(
      problem, phased(eta, std::numbers::sqrt2, 2.0, OptimizerFamily::nsgd),
      phased(eta, 2.0, 1.0, OptimizerFamily::nsgd), OptimizerFamily::nsgd, compare_options(options));
  const std::string tag = "a2^0.5_b2_vs_a2_b1";
  check_band(result, tag, report, limit);
  result.summary["eta"] = eta;
  result.summary["effective_lr"] = effective_lr(eta, kBaseBatch, problem);
  result.summary["band_limit"] = limit;
  result.summary["comparison"] = comparison_row(tag, report);
  result.summary["min_dominance_ratio_a"] = report.min_dominance_a;
  result.summary["min_dominance_ratio_b"] = report.min_dominance_b;
  result.artifacts["compare_" + tag + ".csv"] = comparison_csv(report);
  result.artifacts["a2^0.5_b2.exact.csv"] = trajectory_csv(report.trajectory_a, 10);
  result.artifacts["a2_b1.exact.csv"] = trajectory_csv(report.trajectory_b, 10);
  finish(result);
  return result;
}

SuiteResult equivalence_line_suite(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "equivalence-line";
  const ProblemInstance problem = reference_problem();
  const double target = 0.9 * max_theorem_lr(problem.spectrum());
  const double eta = target * std::sqrt(problem.noise_variance() * problem.spectrum().trace()) /
                     std::sqrt(kBaseBatch);
  const double limit = 10.0;
  const auto& points = equivalence_line_points();
  const ScheduleSpec baseline = phased(eta, points[0].alpha, points[0].beta, OptimizerFamily::nsgd);
  result.summary["eta"] = eta;
  result.summary["baseline"] = points[0].tag;
  result.summary["band_limit"] = limit;
  Json rows = Json::array();
  for (const AlphaBeta& p : points) {
    const ScheduleSpec s = phased(eta, p.alpha, p.beta, OptimizerFamily::nsgd);
    const GuardStatus guard = check_divergence_guard(s);
    Json row;
    row["point"] = p.tag;
    row["alpha"] = p.alpha;
    row["beta"] = p.beta;
    row["product"] = s.equivalence_product();
    row["guard"] = to_string(guard);
    if (guard == GuardStatus::will_diverge && !options.allow_divergent) {
      row["evolved"] = false;
      rows.push_back(row);
      continue;
    }
    const EquivalenceReport report = compare_procedures(problem, s, baseline, OptimizerFamily::nsgd,
                                                        compare_options(options, true));
    row["evolved"] = true;
    row["comparison"] = comparison_json(report);
    if (guard == GuardStatus::ok) {
      check_band(result, p.tag, report, limit);
    }
    rows.push_back(row);
    result.artifacts[p.tag + ".exact.csv"] = trajectory_csv(report.trajectory_a, 10);
    result.artifacts["compare_" + p.tag + ".csv"] = comparison_csv(report);
  }
  result.summary["points"] = rows;
  finish(result);
  return result;
}

// ---------------------------------------------------------------- divergence

SuiteResult divergence_demo_suite(const SuiteOptions& options) {
  SuiteResult result;
  result.name = "divergence-demo";
  const GuardStatus diverging = check_divergence_guard(1.0, 4.0, OptimizerFamily::nsgd);
  const GuardStatus boundary = check_divergence_guard(std::numbers::sqrt2, 2.0, OptimizerFamily::nsgd);
  result.summary["guard_a1_b4"] = to_string(diverging);
  result.summary["guard_a2^0.5_b2"] = to_string(boundary);
  if (diverging != GuardStatus::will_diverge) {
    result.failures.push_back("(1, 4) is not flagged will_diverge");
  }
  if (boundary != GuardStatus::ok) {
    result.failures.push_back("boundary (sqrt 2, 2) does not pass the guard");
  }
  if (!options.allow_divergent) {
    throw GuardFailure("divergence-demo evolves the (1, 4) NSGD schedule; rerun with --allow-divergent");
  }

  const ProblemInstance problem =
      make_deterministic_problem(make_power_law_spectrum(2, 1.0), 1.0);
  const std::size_t phases = 10;
  const double steps_per_phase = 200.0;
  const double base_batch = 1.0;
  const double target = 0.9 * max_theorem_lr(problem.spectrum());
  const double eta = target * std::sqrt(problem.noise_variance() * problem.spectrum().trace()) /
                     std::sqrt(base_batch);
  std::vector<double> samples;
  for (std::size_t k = 0; k < phases; ++k) {
    samples.push_back(steps_per_phase * base_batch * std::pow(4.0, static_cast<double>(k)));
  }
  const ScheduleSpec schedule(eta, base_batch, 1.0, 4.0, samples, OptimizerFamily::nsgd);
  const RiskTrajectory traj =
      nsgd_evolve(problem, schedule, NsgdMode::variance_dominated, evolve_options(options, true));

  std::vector<double> step_sizes;
  std::vector<double> growth;
  double worst_growth_error = 0.0;
  for (const TrajectoryRecord& rec : traj.phase_ends) step_sizes.push_back(rec.effective_lr);
  for (std::size_t k = 1; k < step_sizes.size(); ++k) {
    growth.push_back(step_sizes[k] / step_sizes[k - 1]);
    worst_growth_error = std::max(worst_growth_error, std::abs(growth.back() - 2.0) / 2.0);
  }
  const double sigma = std::sqrt(problem.noise_variance());
  const std::vector<double> c = per_phase_observed_c(traj, sigma);
  const std::vector<double> post_cut(c.begin() + 1, c.end());
  // The constant must eventually increase without bound: from its minimum on,
  // every phase exceeds the previous one, and the final phase breaks the threshold.
  const auto lowest = std::min_element(post_cut.begin(), post_cut.end());
  bool increasing_tail = true;
  for (auto it = lowest; it + 1 != post_cut.end(); ++it) {
    increasing_tail = increasing_tail && *(it + 1) > *it;
  }
  const double threshold = 10.0;

  result.summary["eta"] = eta;
  result.summary["phases"] = phases;
  result.summary["effective_lr_per_phase"] = number_array(step_sizes);
  result.summary["effective_lr_growth"] = number_array(growth);
  result.summary["max_relative_growth_error"] = worst_growth_error;
  result.summary["observed_c_per_phase"] = number_array(c);
  result.summary["observed_c_min_phase"] = static_cast<std::size_t>(lowest - post_cut.begin()) + 1;
  result.summary["observed_c_final"] = post_cut.back();
  result.summary["warnings"] = traj.warnings;
  if (!(worst_growth_error <= 1e-12)) {
    result.failures.push_back("effective learning rate does not double per phase");
  }
  if (!increasing_tail || !(post_cut.back() > threshold) || lowest + 1 == post_cut.end()) {
    result.failures.push_back("observed Assumption 1 constant does not grow across phases");
  }
  result.artifacts["a1_b4.exact.csv"] = trajectory_csv(traj, 10);
  finish(result);
  return result;
}

// ---------------------------------------------------------------- lemma grid

SuiteResult lemma_grid_suite(const SuiteOptions&) {
  SuiteResult result;
  result.name = "lemma-grid";
  const std::vector<double> exponents = {0.0, 1.0, 2.0};
  const std::vector<std::size_t> dims = {1, 2, 8, 64};
  const std::vector<double> eta_scales = {0.25, 0.5, 1.0};
  const unsigned max_k = 6;

  // NSGD points map to SGD through the effective step: (alpha / sqrt(beta), beta).
  std::vector<AlphaBeta> sgd_points;
  std::vector<double> alphas;
  for (const AlphaBeta& p : equivalence_line_points()) {
    alphas.push_back(p.alpha);
    const double mapped = p.alpha / std::sqrt(p.beta);
    if (mapped >= 1.0 - 1e-12) {
      sgd_points.push_back({p.tag, std::max(1.0, mapped), p.beta});
    }
    if (mapped >= 1.0 - 1e-12) alphas.push_back(std::max(1.0, mapped));
  }
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end(),
                           [](double x, double y) { return std::abs(x - y) <= 1e-12 * y; }),
               alphas.end());
  std::sort(sgd_points.begin(), sgd_points.end(),
            [](const AlphaBeta& x, const AlphaBeta& y) { return x.alpha < y.alpha; });

  std::string csv = "check,exponent,dimension,eta_scale,alpha1,beta1,alpha2,beta2,k,pass,min_left_margin,min_right_margin\n";
  std::uint64_t inv_checks = 0, inv_failures = 0, con_checks = 0, con_failures = 0;
  std::uint64_t zero_right_margin = 0;
  double min_inv_margin = std::numeric_limits<double>::infinity();
  double min_left = std::numeric_limits<double>::infinity();
  double min_right = std::numeric_limits<double>::infinity();
  for (double a : exponents) {
    for (std::size_t d : dims) {
      const Spectrum spectrum = make_power_law_spectrum(d, a);
      for (double scale : eta_scales) {
        const double eta = scale * max_theorem_lr(spectrum);
        for (unsigned k = 0; k <= max_k; ++k) {
          for (double alpha : alphas) {
            const InvLambdaCheck inv = check_lemma_inv_lambda(eta, alpha, k, spectrum);
            ++inv_checks;
            const bool ok = inv.pass && inv.min_margin > 0.0;
            inv_failures += ok ? 0 : 1;
            min_inv_margin = std::min(min_inv_margin, inv.min_margin);
            csv += "inv_lambda," + format_number(a) + "," + std::to_string(d) + "," +
                   format_number(scale) + "," + format_number(alpha) + ",,,," + std::to_string(k) +
                   "," + (ok ? "1" : "0") + "," + format_number(inv.min_margin) + ",\n";
          }
          for (std::size_t i = 0; i < sgd_points.size(); ++i) {
            for (std::size_t j = i + 1; j < sgd_points.size(); ++j) {
              const AlphaBeta& p1 = sgd_points[i];
              const AlphaBeta& p2 = sgd_points[j];
              const ContractionCheck con =
                  check_lemma_contractions(eta, p1.alpha, p2.alpha, p1.beta, p2.beta, k, spectrum);
              ++con_checks;
              // At k = 0 the middle and right factors coincide, so only equality is possible.
              const bool right_ok = k == 0 ? con.min_right_margin >= 0.0 : con.min_right_margin > 0.0;
              const bool ok = con.pass && con.min_left_margin > 0.0 && right_ok;
              con_failures += ok ? 0 : 1;
              if (con.min_right_margin == 0.0) ++zero_right_margin;
              min_left = std::min(min_left, con.min_left_margin);
              if (k > 0) min_right = std::min(min_right, con.min_right_margin);
              csv += "contractions," + format_number(a) + "," + std::to_string(d) + "," +
                     format_number(scale) + "," + format_number(p1.alpha) + "," +
                     format_number(p1.beta) + "," + format_number(p2.alpha) + "," +
                     format_number(p2.beta) + "," + std::to_string(k) + "," + (ok ? "1" : "0") + "," +
                     format_number(con.min_left_margin) + "," + format_number(con.min_right_margin) +
                     "\n";
            }
          }
        }
      }
    }
  }
  Json pairs = Json::array();
  for (const AlphaBeta& p : sgd_points) pairs.push_back({{"from", p.tag}, {"alpha", p.alpha}, {"beta", p.beta}});
  result.summary["spectrum_exponents"] = number_array(exponents);
  result.summary["dimensions"] = dims;
  result.summary["eta_scales"] = number_array(eta_scales);
  result.summary["k_max"] = max_k;
  result.summary["alphas"] = number_array(alphas);
  result.summary["sgd_pairs"] = pairs;
  result.summary["inv_lambda_checks"] = inv_checks;
  result.summary["inv_lambda_failures"] = inv_failures;
  result.summary["inv_lambda_min_relative_margin"] = min_inv_margin;
  result.summary["contraction_checks"] = con_checks;
  result.summary["contraction_failures"] = con_failures;
  result.summary["contraction_min_left_margin"] = min_left;
  result.summary["contraction_min_right_margin_k_positive"] = min_right;
  result.summary["contraction_zero_right_margin_count"] = zero_right_margin;
  if (inv_failures > 0) result.failures.push_back("inverse-lambda check failed somewhere on the grid");
  if (con_failures > 0) result.failures.push_back("contraction check failed somewhere on the grid");
  result.artifacts["lemma_grid.csv"] = csv;
  finish(result);
  return result;
}

// ---------------------------------------------------------------- ngd cycle

SuiteResult ngd_cycle_suite(const SuiteOptions&) {
  SuiteResult result;
  result.name = "ngd-cycle";
  std::string csv = "x0,eta,h,steps,amplitude,bound,x_t-3,x_t-2,x_t-1,x_t\n";
  Json rows = Json::array();
  // x0 = 1 reaches the minimum exactly on this grid; 1.0037 settles into a two-point cycle.
  for (double x0 : {1.0, 1.0037}) {
    for (double eta : {0.01, 0.1}) {
      for (double h : {0.5, 1.0, 2.0}) {
        const auto steps = static_cast<std::uint64_t>(std::ceil(x0 / (eta * h))) + 100;
        const NgdCycle cycle = ngd_1d_cycle(eta, h, x0, steps);
        const double bound = eta * h;
        const bool ok = cycle.amplitude <= bound;
        rows.push_back({{"x0", x0}, {"eta", eta}, {"h", h}, {"steps", steps},
                        {"amplitude", cycle.amplitude}, {"bound", bound},
                        {"final_points", cycle.final_points}, {"passed", ok}});
        csv += format_number(x0) + "," + format_number(eta) + "," + format_number(h) + "," +
               std::to_string(steps) + "," + format_number(cycle.amplitude) + "," + format_number(bound);
        for (double x : cycle.final_points) csv += "," + format_number(x);
        csv += "\n";
        if (!ok) {
          result.failures.push_back("amplitude exceeds eta*h at x0=" + format_number(x0) +
                                    ", eta=" + format_number(eta) + ", h=" + format_number(h));
        }
      }
    }
  }
  result.summary["grid"] = rows;
  result.artifacts["ngd_cycle.csv"] = csv;
  finish(result);
  return result;
}

using SuiteFn = std::function<SuiteResult(const SuiteOptions&)>;

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites = {
      {"oracle-agreement", oracle_agreement_suite},
      {"theorem-sgd", theorem_sgd_suite},
      {"corollary-nsgd", corollary_nsgd_suite},
      {"equivalence-line", equivalence_line_suite},
      {"divergence-demo", divergence_demo_suite},
      {"speedup", speedup_suite},
      {"lemma-grid", lemma_grid_suite},
      {"ngd-cycle", ngd_cycle_suite},
  };
  return suites;
}

} // namespace

Json speedup_report(std::uint64_t total_steps, const std::vector<double>& alphas) {
  const double limit = 2.0 / std::numbers::pi;
  Json out;
  out["theoretical_speedup"] = theoretical_speedup_cosine();
  out["equivalent_steps_fraction"] = limit;
  out["total_steps"] = total_steps;
  Json rows = Json::array();
  for (double alpha : alphas) {
    const CutPlan plan = cosine_to_step_cuts(total_steps, alpha);
    const ScheduleSpec seesaw = seesaw_from_cut_plan(plan, 1.0, 1.0);
    const std::uint64_t steps = serial_steps(seesaw);
    const double ratio = static_cast<double>(steps) / static_cast<double>(total_steps);
    rows.push_back({{"alpha", alpha},
                    {"cuts", plan.cut_steps.size()},
                    {"serial_steps", steps},
                    {"serial_step_ratio", ratio},
                    {"speedup", 1.0 - ratio},
                    {"abs_diff_to_limit", std::abs(ratio - limit)},
                    {"rel_diff_to_limit", std::abs(ratio - limit) / limit}});
  }
  out["discrete"] = rows;
  return out;
}

std::vector<std::string> builtin_suites() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : registry()) names.push_back(name);
  return names;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
  for (const auto& [suite, fn] : registry()) {
    if (suite == name) {
      SuiteResult result = fn(options);
      result.name = name;
      return result;
    }
  }
  throw InvalidArgument("unknown suite '" + name + "'");
}

} // namespace seesaw::cli
