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
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seesaw/montecarlo.hpp"
#include "seesaw/nsgd.hpp"
#include "seesaw/problem.hpp"
#include "seesaw/schedules.hpp"

namespace seesaw::cli {

/// Config rejected; carries the 1-based line of the offending node (0 if unknown).
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& field, int line, const std::string& message);
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

private:
  std::string field_;
  int line_;
};

enum class Engine { exact, mc, both };

struct NamedSchedule {
  std::string name;
  std::string kind;
  ScheduleSpec schedule;
};

struct OutputSettings {
  std::string directory = "out";
  bool csv = true;
  bool json = true;
  bool svg = false;
  std::uint64_t record_stride = 1;
};

struct ExperimentConfig {
  ProblemInstance problem;
  std::vector<NamedSchedule> schedules;
  Engine engine = Engine::exact;
  OptimizerFamily family = OptimizerFamily::sgd;
  NsgdMode nsgd_mode = NsgdMode::variance_dominated;
  std::optional<McConfig> mc;
  std::vector<std::string> compare;
  double lr_inflation = 1.01;
  OutputSettings output;

  const NamedSchedule& schedule(const std::string& name) const;
};

ExperimentConfig parse_config_string(const std::string& text);
ExperimentConfig load_config(const std::string& path);

std::string_view to_string(Engine engine) noexcept;
Engine parse_engine(std::string_view text);

} // namespace seesaw::cli
