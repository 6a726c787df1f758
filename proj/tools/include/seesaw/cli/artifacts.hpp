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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include <json.hpp>

#include "seesaw/dynamics.hpp"
#include "seesaw/equivalence.hpp"
#include "seesaw/montecarlo.hpp"

namespace seesaw::cli {

using Json = nlohmann::ordered_json;

/// File name -> contents. Artifacts are rendered in memory first so reruns can
/// be compared byte for byte.
using ArtifactSet = std::map<std::string, std::string>;

/// Shortest round-trip decimal form ("%.17g"); "nan" / "inf" for non-finite values.
std::string format_number(double value);

/// step,samples,lr,batch,excess_risk,bias_risk,variance_risk[,dominance_ratio]
std::string trajectory_csv(const RiskTrajectory& trajectory, std::uint64_t stride = 1);

/// Exact-trajectory columns (risks from the Monte Carlo mean, bias/variance
/// columns empty) plus stderr.
std::string mc_csv(const McTrajectory& trajectory, std::uint64_t stride = 1);

/// phase,samples,risk_a,risk_b,ratio
std::string comparison_csv(const EquivalenceReport& report);

Json trajectory_summary(const RiskTrajectory& trajectory);
Json comparison_json(const EquivalenceReport& report);

std::string dump_json(const Json& json);

/// Writes every artifact under `directory`, creating it if needed.
void write_artifacts(const ArtifactSet& artifacts, const std::filesystem::path& directory);

} // namespace seesaw::cli
