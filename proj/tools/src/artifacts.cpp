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

#include "seesaw/cli/artifacts.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace seesaw::cli {

std::string format_number(double value) {
  if (std::isnan(value)) {
    return "nan";
  }
  if (std::isinf(value)) {
    return value > 0 ? "inf" : "-inf";
  }
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

namespace {

bool keep(std::size_t index, std::size_t count, std::uint64_t stride) {
  return index % stride == 0 || index + 1 == count;
}

Json number_or_null(double value) { return std::isfinite(value) ? Json(value) : Json(nullptr); }

} // namespace

std::string trajectory_csv(const RiskTrajectory& trajectory, std::uint64_t stride) {
  std::ostringstream out;
  out << "step,samples,lr,batch,excess_risk,bias_risk,variance_risk";
  if (trajectory.has_dominance_ratio) {
    out << ",dominance_ratio";
  }
  out << '\n';
  const auto& recs = trajectory.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!keep(i, recs.size(), stride)) {
      continue;
    }
    const TrajectoryRecord& r = recs[i];
    out << r.step << ',' << format_number(r.samples) << ',' << format_number(r.lr) << ','
        << format_number(r.batch) << ',' << format_number(r.excess_risk) << ','
        << format_number(r.bias_risk) << ',' << format_number(r.variance_risk);
    if (trajectory.has_dominance_ratio) {
      out << ',' << format_number(r.dominance_ratio);
    }
    out << '\n';
  }
  return out.str();
}

std::string mc_csv(const McTrajectory& trajectory, std::uint64_t stride) {
  std::ostringstream out;
  out << "step,samples,lr,batch,excess_risk,bias_risk,variance_risk,stderr\n";
  const auto& recs = trajectory.records;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (!keep(i, recs.size(), stride)) {
      continue;
    }
    const McRecord& r = recs[i];
    out << r.step << ',' << format_number(r.samples) << ',' << format_number(r.lr) << ','
        << r.batch << ',' << format_number(r.mean_excess_risk) << ",,,"
        << format_number(r.stderr_excess_risk) << '\n';
  }
  return out.str();
}

std::string comparison_csv(const EquivalenceReport& report) {
  std::ostringstream out;
  out << "phase,samples,risk_a,risk_b,ratio\n";
  for (const PhaseComparison& p : report.phases) {
    out << p.phase << ',' << format_number(p.samples) << ',' << format_number(p.risk_a) << ','
        << format_number(p.risk_b) << ',' << format_number(p.ratio) << '\n';
  }
  return out.str();
}

Json trajectory_summary(const RiskTrajectory& trajectory) {
  const TrajectoryRecord& last = trajectory.final_record();
  Json out;
  out["family"] = std::string(to_string(trajectory.family));
  out["guard"] = std::string(to_string(trajectory.guard));
  out["serial_steps"] = trajectory.serial_steps;
  out["total_samples"] = trajectory.total_samples;
  out["terminal_excess_risk"] = number_or_null(last.excess_risk);
  out["terminal_bias_risk"] = number_or_null(last.bias_risk);
  out["terminal_variance_risk"] = number_or_null(last.variance_risk);
  Json phases = Json::array();
  for (const TrajectoryRecord& p : trajectory.phase_ends) {
    phases.push_back({{"phase", p.phase},
                      {"step", p.step},
                      {"samples", p.samples},
                      {"lr", p.lr},
                      {"batch", p.batch},
                      {"effective_lr", number_or_null(p.effective_lr)},
                      {"excess_risk", number_or_null(p.excess_risk)}});
  }
  out["phase_ends"] = std::move(phases);
  if (trajectory.has_dominance_ratio) {
    out["min_dominance_ratio"] = number_or_null(trajectory.min_dominance_ratio);
  }
  if (!trajectory.warnings.empty()) {
    out["warnings"] = trajectory.warnings;
  }
  return out;
}

Json comparison_json(const EquivalenceReport& report) {
  Json out;
  out["family"] = std::string(to_string(report.family));
  if (report.family == OptimizerFamily::nsgd) {
    out["nsgd_mode"] = std::string(to_string(report.nsgd_mode));
  }
  out["schedule_a"] = {{"alpha", report.alpha_a},
                       {"beta", report.beta_a},
                       {"product", report.product_a},
                       {"guard", std::string(to_string(report.guard_a))}};
  out["schedule_b"] = {{"alpha", report.alpha_b},
                       {"beta", report.beta_b},
                       {"product", report.product_b},
                       {"guard", std::string(to_string(report.guard_b))}};
  out["lr_inflation"] = report.lr_inflation;
  Json phases = Json::array();
  for (const PhaseComparison& p : report.phases) {
    Json row{{"phase", p.phase},
             {"samples", p.samples},
             {"risk_a", number_or_null(p.risk_a)},
             {"risk_b", number_or_null(p.risk_b)},
             {"ratio", number_or_null(p.ratio)},
             {"interpolated", p.interpolated}};
    if (!std::isnan(p.risk_b_inflated)) {
      row["risk_b_inflated"] = number_or_null(p.risk_b_inflated);
      row["inflated_ratio"] = number_or_null(p.inflated_ratio);
    }
    phases.push_back(std::move(row));
  }
  out["phases"] = std::move(phases);
  out["ratio_min"] = number_or_null(report.ratio_min);
  out["ratio_max"] = number_or_null(report.ratio_max);
  out["uniform_constant"] = number_or_null(report.uniform_constant);
  out["assumption1"] = {
      {"observed_c_a", report.assumption1_a.observed_c},
      {"observed_c_b", report.assumption1_b.observed_c},
      {"exceeds_threshold_a", report.assumption1_a.exceeds_threshold},
      {"exceeds_threshold_b", report.assumption1_b.exceeds_threshold},
  };
  if (report.family == OptimizerFamily::nsgd) {
    out["min_dominance_ratio_a"] = number_or_null(report.min_dominance_a);
    out["min_dominance_ratio_b"] = number_or_null(report.min_dominance_b);
  }
  return out;
}

std::string dump_json(const Json& json) { return json.dump(2) + "\n"; }

void write_artifacts(const ArtifactSet& artifacts, const std::filesystem::path& directory) {
  std::filesystem::create_directories(directory);
  for (const auto& [name, content] : artifacts) {
    const std::filesystem::path path = directory / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) {
      throw std::runtime_error("cannot write " + path.string());
    }
    out << content;
    if (!out) {
      throw std::runtime_error("write failed for " + path.string());
    }
  }
}

} // namespace seesaw::cli
