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

#include "seesaw/equivalence.hpp"

#include <algorithm>
#include <cmath>

#include "seesaw/error.hpp"

namespace seesaw {

namespace {

constexpr double kLrSlack = 1e-12;

bool nearly_equal(double a, double b, double rel) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

double total_risk_over_noise(double excess, double noise) { return (excess + 0.5 * noise) / noise; }

} // namespace

Assumption1Result assumption1_monitor(const RiskTrajectory& trajectory, double sigma,
                                      std::uint64_t first_cut_step, double threshold) {
  if (!(sigma > 0.0)) {
    throw InvalidArgument("assumption monitor needs sigma > 0");
  }
  if (trajectory.records.empty() || trajectory.records.back().step <= first_cut_step) {
    throw InvalidArgument("trajectory does not extend past the first cut step");
  }
  const double noise = sigma * sigma;
  Assumption1Result out;
  bool all_zero = true;
  for (const TrajectoryRecord& rec : trajectory.records) {
    if (rec.step <= first_cut_step) {
      continue;
    }
    all_zero = all_zero && rec.excess_risk == 0.0;
    out.observed_c = std::max(out.observed_c, total_risk_over_noise(rec.excess_risk, noise));
  }
  if (all_zero) {
    out.observed_c = 0.0;
    out.trivially_satisfied = true;
  }
  out.exceeds_threshold = out.observed_c > threshold;
  return out;
}

std::vector<double> per_phase_observed_c(const RiskTrajectory& trajectory, double sigma) {
  if (!(sigma > 0.0)) {
    throw InvalidArgument("assumption monitor needs sigma > 0");
  }
  const double noise = sigma * sigma;
  std::vector<double> out;
  for (const TrajectoryRecord& rec : trajectory.records) {
    if (rec.step == 0) {
      continue;
    }
    if (rec.phase >= out.size()) {
      out.resize(rec.phase + 1, 0.0);
    }
    out[rec.phase] = std::max(out[rec.phase], total_risk_over_noise(rec.excess_risk, noise));
  }
  return out;
}

std::uint64_t first_cut_step(const ScheduleSpec& schedule) { return schedule.phase_steps(0); }

double risk_at_samples(const RiskTrajectory& trajectory, double samples, bool* interpolated) {
  const auto& recs = trajectory.records;
  if (recs.empty()) {
    throw InvalidArgument("empty trajectory");
  }
  auto it = std::lower_bound(recs.begin(), recs.end(), samples,
                             [](const TrajectoryRecord& r, double s) { return r.samples < s; });
  if (it == recs.end()) {
    if (nearly_equal(recs.back().samples, samples, 1e-9)) {
      it = recs.end() - 1;
    } else {
      throw InvalidArgument("sample target lies beyond the trajectory");
    }
  }
  if (it != recs.begin() && nearly_equal((it - 1)->samples, samples, 1e-9)) {
    --it;
  }
  if (nearly_equal(it->samples, samples, 1e-9) || it == recs.begin()) {
    if (interpolated != nullptr) {
      *interpolated = false;
    }
    return it->excess_risk;
  }
  const TrajectoryRecord& hi = *it;
  const TrajectoryRecord& lo = *(it - 1);
  const double w = (samples - lo.samples) / (hi.samples - lo.samples);
  if (interpolated != nullptr) {
    *interpolated = true;
  }
  return lo.excess_risk + w * (hi.excess_risk - lo.excess_risk);
}

bool EquivalenceReport::sandwich_holds(double constant) const noexcept {
  for (const PhaseComparison& p : phases) {
    if (p.risk_a > constant * p.risk_b) {
      return false;
    }
    if (!std::isnan(p.risk_b_inflated) && p.risk_b_inflated > constant * p.risk_a) {
      return false;
    }
  }
  return true;
}

EquivalenceReport compare_procedures(const ProblemInstance& problem, const ScheduleSpec& schedule_a,
                                     const ScheduleSpec& schedule_b, OptimizerFamily family,
                                     const CompareOptions& options) {
  const ScheduleSpec a = schedule_a.with_family(family);
  const ScheduleSpec b = schedule_b.with_family(family);

  if (a.num_phases() != b.num_phases()) {
    throw InvalidArgument("schedules have different numbers of phases");
  }
  for (std::size_t k = 0; k < a.num_phases(); ++k) {
    if (!nearly_equal(a.phase_samples()[k], b.phase_samples()[k], 1e-12)) {
      throw InvalidArgument("phase " + std::to_string(k) + " sample budgets differ");
    }
  }
  if (!nearly_equal(a.equivalence_product(), b.equivalence_product(), options.product_tolerance)) {
    throw InvalidArgument("equivalence products differ: " + std::to_string(a.equivalence_product()) +
                          " vs " + std::to_string(b.equivalence_product()));
  }
  if (!(options.lr_inflation >= 1.0)) {
    throw InvalidArgument("lr_inflation must be >= 1");
  }

  const double lr_cap = max_theorem_lr(problem.spectrum()) * (1.0 + kLrSlack);
  for (const ScheduleSpec* s : {&a, &b}) {
    const double step = family == OptimizerFamily::sgd
                            ? s->base_lr()
                            : effective_lr(s->base_lr(), s->base_batch(), problem);
    if (step > lr_cap) {
      throw InvalidArgument("base step size " + std::to_string(step) +
                            " exceeds 0.01 / Tr(H) = " + std::to_string(lr_cap));
    }
  }

  EquivalenceReport report;
  report.family = family;
  report.nsgd_mode = options.nsgd_mode;
  report.alpha_a = a.lr_decay_factor();
  report.beta_a = a.batch_ramp_factor();
  report.alpha_b = b.lr_decay_factor();
  report.beta_b = b.batch_ramp_factor();
  report.product_a = a.equivalence_product();
  report.product_b = b.equivalence_product();
  report.lr_inflation = options.lr_inflation;
  report.guard_a = check_divergence_guard(a);
  report.guard_b = check_divergence_guard(b);

  EvolveOptions evolve_options;
  evolve_options.observer = options.observer;
  evolve_options.allow_divergent = options.allow_divergent;
  auto run = [&](const ScheduleSpec& s) {
    return family == OptimizerFamily::sgd ? evolve(problem, s, evolve_options)
                                          : nsgd_evolve(problem, s, options.nsgd_mode, evolve_options);
  };
  report.trajectory_a = run(a);
  report.trajectory_b = run(b);
  RiskTrajectory inflated;
  const bool with_inflation = options.lr_inflation > 1.0;
  if (with_inflation) {
    inflated = run(b.with_lr_scale(options.lr_inflation));
  }
  report.min_dominance_a = report.trajectory_a.min_dominance_ratio;
  report.min_dominance_b = report.trajectory_b.min_dominance_ratio;

  double cumulative = 0.0;
  report.ratio_min = std::numeric_limits<double>::infinity();
  report.ratio_max = 0.0;
  report.uniform_constant = 1.0;
  for (std::size_t k = 0; k < a.num_phases(); ++k) {
    cumulative += a.phase_samples()[k];
    PhaseComparison cmp;
    cmp.phase = k;
    cmp.samples = cumulative;
    bool interp_a = false;
    bool interp_b = false;
    cmp.risk_a = risk_at_samples(report.trajectory_a, cumulative, &interp_a);
    cmp.risk_b = risk_at_samples(report.trajectory_b, cumulative, &interp_b);
    cmp.interpolated = interp_a || interp_b;
    cmp.ratio = cmp.risk_a / cmp.risk_b;
    if (with_inflation) {
      bool interp_c = false;
      cmp.risk_b_inflated = risk_at_samples(inflated, cumulative, &interp_c);
      cmp.interpolated = cmp.interpolated || interp_c;
      cmp.inflated_ratio = cmp.risk_b_inflated / cmp.risk_a;
      report.uniform_constant = std::max(report.uniform_constant, cmp.inflated_ratio);
    }
    report.ratio_min = std::min(report.ratio_min, cmp.ratio);
    report.ratio_max = std::max(report.ratio_max, cmp.ratio);
    report.uniform_constant = std::max({report.uniform_constant, cmp.ratio, 1.0 / cmp.ratio});
    report.phases.push_back(cmp);
  }

  if (problem.noise_variance() > 0.0 && a.num_phases() > 1) {
    const double sigma = std::sqrt(problem.noise_variance());
    report.assumption1_a = assumption1_monitor(report.trajectory_a, sigma, first_cut_step(a),
                                               options.assumption1_threshold);
    report.assumption1_b = assumption1_monitor(report.trajectory_b, sigma, first_cut_step(b),
                                               options.assumption1_threshold);
  }
  return report;
}

InvLambdaCheck check_lemma_inv_lambda(double eta, double alpha, unsigned k, const Spectrum& spectrum) {
  if (!(eta > 0.0) || eta > max_theorem_lr(spectrum) * (1.0 + kLrSlack)) {
    throw InvalidArgument("inverse-lambda check needs 0 < eta <= 0.01 / Tr(H)");
  }
  if (!(alpha >= 1.0)) {
    throw InvalidArgument("inverse-lambda check needs alpha >= 1");
  }
  const double scale = std::pow(alpha, static_cast<double>(k));
  const double upper = scale / eta;
  const double lower = scale / (2.0 * eta);
  InvLambdaCheck out;
  out.pass = true;
  out.min_margin = std::numeric_limits<double>::infinity();
  for (double l : spectrum.eigenvalues()) {
    const double x = eta * l / scale;
    // 1 - (1 - x)^2 = x (2 - x), kept in factored form for small x.
    const double middle = l / (x * (2.0 - x));
    out.upper_bound.push_back(upper);
    out.lower_bound.push_back(lower);
    out.middle.push_back(middle);
    out.upper_margin.push_back(upper - middle);
    out.lower_margin.push_back(middle - lower);
    out.pass = out.pass && upper >= middle && middle >= lower;
    out.min_margin = std::min({out.min_margin, (upper - middle) / upper, (middle - lower) / lower});
  }
  return out;
}

ContractionCheck check_lemma_contractions(double eta, double alpha1, double alpha2, double beta1,
                                          double beta2, unsigned k, const Spectrum& spectrum,
                                          double inflation) {
  if (!(eta > 0.0) || eta > max_theorem_lr(spectrum) * (1.0 + kLrSlack)) {
    throw InvalidArgument("contraction check needs 0 < eta <= 0.01 / Tr(H)");
  }
  if (!(alpha1 >= 1.0 && alpha2 >= 1.0 && beta1 >= 1.0 && beta2 >= 1.0)) {
    throw InvalidArgument("contraction check needs all factors >= 1");
  }
  if (!nearly_equal(alpha1 * beta1, alpha2 * beta2, 1e-9)) {
    throw InvalidArgument("contraction check needs alpha1 beta1 = alpha2 beta2");
  }
  if (alpha1 > alpha2 * (1.0 + 1e-12)) {
    throw InvalidArgument("contraction check needs alpha1 <= alpha2");
  }
  const double kk = static_cast<double>(k);
  const double a1k = std::pow(alpha1, kk);
  const double a2k = std::pow(alpha2, kk);
  const double e1 = 2.0 * std::pow(beta1, kk);
  const double e2 = 2.0 * std::pow(beta2, kk);

  ContractionCheck out;
  out.pass = true;
  out.min_left_margin = std::numeric_limits<double>::infinity();
  out.min_right_margin = std::numeric_limits<double>::infinity();
  for (double l : spectrum.eigenvalues()) {
    const double x = eta * l;
    const double left = e1 * std::log1p(-inflation * x / a2k);
    const double middle = e2 * std::log1p(-x / a1k);
    const double right = e1 * std::log1p(-x / a2k);
    out.log_left.push_back(left);
    out.log_middle.push_back(middle);
    out.log_right.push_back(right);
    out.left_margin.push_back(middle - left);
    out.right_margin.push_back(right - middle);
    out.pass = out.pass && left <= middle && middle <= right;
    out.min_left_margin = std::min(out.min_left_margin, middle - left);
    out.min_right_margin = std::min(out.min_right_margin, right - middle);
  }
  return out;
}

} // namespace seesaw
