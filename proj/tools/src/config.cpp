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

#include "seesaw/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "seesaw/error.hpp"

namespace seesaw::cli {

ConfigError::ConfigError(const std::string& field, int line, const std::string& message)
    : std::runtime_error((line > 0 ? "line " + std::to_string(line) + ": " : std::string()) +
                         field + ": " + message),
      field_(field), line_(line) {}

namespace {

int line_of(const YAML::Node& node) {
  const YAML::Mark mark = node.Mark();
  return mark.line >= 0 ? mark.line + 1 : 0;
}

// Every key must be in `allowed`.
void check_keys(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
  if (!node.IsMap()) {
    throw ConfigError(path, line_of(node), "expected a mapping");
  }
  for (const auto& entry : node) {
    const std::string key = entry.first.as<std::string>();
    if (allowed.count(key) == 0) {
      throw ConfigError(path.empty() ? key : path + "." + key, line_of(entry.first), "unknown key");
    }
  }
}

YAML::Node require(const YAML::Node& parent, const std::string& path, const std::string& key) {
  YAML::Node child = parent[key];
  if (!child) {
    throw ConfigError(path.empty() ? key : path + "." + key, line_of(parent), "missing required key");
  }
  return child;
}

template <typename T>
T scalar(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) {
    throw ConfigError(field, line_of(node), "expected a scalar");
  }
  try {
    return node.as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError(field, line_of(node), "cannot parse value '" + node.Scalar() + "'");
  }
}

// Numbers may be written as expressions of the form a^b (e.g. 2^0.75).
double number(const YAML::Node& node, const std::string& field) {
  if (!node.IsScalar()) {
    throw ConfigError(field, line_of(node), "expected a number");
  }
  const std::string text = node.Scalar();
  const auto caret = text.find('^');
  auto parse = [&](const std::string& piece) {
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(piece, &used);
    } catch (const std::exception&) {
      throw ConfigError(field, line_of(node), "cannot parse number '" + text + "'");
    }
    if (used != piece.size()) {
      throw ConfigError(field, line_of(node), "cannot parse number '" + text + "'");
    }
    return value;
  };
  if (caret == std::string::npos) {
    return parse(text);
  }
  return std::pow(parse(text.substr(0, caret)), parse(text.substr(caret + 1)));
}

double number_or(const YAML::Node& parent, const std::string& path, const std::string& key,
                 double fallback) {
  const YAML::Node node = parent[key];
  return node ? number(node, path + "." + key) : fallback;
}

std::vector<double> number_list(const YAML::Node& node, const std::string& field) {
  if (!node.IsSequence()) {
    throw ConfigError(field, line_of(node), "expected a list");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < node.size(); ++i) {
    out.push_back(number(node[i], field + "[" + std::to_string(i) + "]"));
  }
  return out;
}

std::uint64_t count(const YAML::Node& node, const std::string& field) {
  const double value = number(node, field);
  if (!(value >= 0.0) || value != std::floor(value)) {
    throw ConfigError(field, line_of(node), "expected a non-negative integer");
  }
  return static_cast<std::uint64_t>(value);
}

ProblemInstance parse_problem(const YAML::Node& node) {
  const std::string path = "problem";
  check_keys(node, path,
             {"spectrum", "dimension", "exponent", "scale", "eigenvalues", "noise_variance", "init",
              "init_scale"});
  const std::string kind = scalar<std::string>(require(node, path, "spectrum"), "problem.spectrum");
  try {
    std::optional<Spectrum> spectrum;
    if (kind == "power_law") {
      if (node["eigenvalues"]) {
        throw ConfigError("problem.eigenvalues", line_of(node["eigenvalues"]),
                          "not allowed with spectrum: power_law");
      }
      spectrum = make_power_law_spectrum(count(require(node, path, "dimension"), "problem.dimension"),
                                         number_or(node, path, "exponent", 0.0),
                                         number_or(node, path, "scale", 1.0));
    } else if (kind == "explicit") {
      for (const char* key : {"dimension", "exponent", "scale"}) {
        if (node[key]) {
          throw ConfigError(path + "." + key, line_of(node[key]), "not allowed with spectrum: explicit");
        }
      }
      spectrum = Spectrum(number_list(require(node, path, "eigenvalues"), "problem.eigenvalues"));
    } else {
      throw ConfigError("problem.spectrum", line_of(node["spectrum"]),
                        "unknown spectrum kind '" + kind + "' (power_law | explicit)");
    }
    const double noise = number(require(node, path, "noise_variance"), "problem.noise_variance");
    const double scale = number_or(node, path, "init_scale", 1.0);
    const std::string init = node["init"] ? scalar<std::string>(node["init"], "problem.init")
                                          : std::string("deterministic");
    if (init == "deterministic") {
      return make_deterministic_problem(*spectrum, noise, scale);
    }
    if (init == "gaussian") {
      return make_gaussian_init_problem(*spectrum, noise, scale);
    }
    throw ConfigError("problem.init", line_of(node["init"]),
                      "unknown init policy '" + init + "' (deterministic | gaussian)");
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, line_of(node), e.what());
  }
}

std::vector<double> phase_samples(const YAML::Node& node, const std::string& path) {
  const YAML::Node samples = require(node, path, "phase_samples");
  if (samples.IsSequence()) {
    if (node["phases"]) {
      throw ConfigError(path + ".phases", line_of(node["phases"]),
                        "phases is implied by a phase_samples list");
    }
    return number_list(samples, path + ".phase_samples");
  }
  const double per_phase = number(samples, path + ".phase_samples");
  const std::uint64_t phases = node["phases"] ? count(node["phases"], path + ".phases") : 1;
  if (phases == 0) {
    throw ConfigError(path + ".phases", line_of(node["phases"]), "must be >= 1");
  }
  return std::vector<double>(phases, per_phase);
}

NamedSchedule parse_schedule(const std::string& name, const YAML::Node& node, OptimizerFamily family) {
  const std::string path = "schedules." + name;
  if (!node.IsMap()) {
    throw ConfigError(path, line_of(node), "expected a mapping");
  }
  const std::string kind = scalar<std::string>(require(node, path, "kind"), path + ".kind");
  const double lr = number(require(node, path, "lr"), path + ".lr");
  const double batch = number(require(node, path, "batch"), path + ".batch");
  try {
    if (kind == "constant") {
      check_keys(node, path, {"kind", "lr", "batch", "phases", "phase_samples"});
      return {name, kind, make_constant_schedule(lr, batch, phase_samples(node, path), family)};
    }
    if (kind == "step_decay") {
      check_keys(node, path, {"kind", "lr", "batch", "lr_decay", "phases", "phase_samples"});
      const double alpha = number(require(node, path, "lr_decay"), path + ".lr_decay");
      return {name, kind, ScheduleSpec(lr, batch, alpha, 1.0, phase_samples(node, path), family)};
    }
    if (kind == "batch_ramp") {
      check_keys(node, path, {"kind", "lr", "batch", "lr_decay", "batch_ramp", "phases", "phase_samples"});
      const double alpha = number_or(node, path, "lr_decay", 1.0);
      const double beta = number(require(node, path, "batch_ramp"), path + ".batch_ramp");
      return {name, kind, ScheduleSpec(lr, batch, alpha, beta, phase_samples(node, path), family)};
    }
    if (kind == "seesaw" || kind == "cosine_steps") {
      std::set<std::string> allowed{"kind", "lr", "batch", "decay_per_cut", "total_steps"};
      if (kind == "seesaw") {
        allowed.insert("cut_steps");
      }
      check_keys(node, path, allowed);
      const double alpha = number(require(node, path, "decay_per_cut"), path + ".decay_per_cut");
      const std::uint64_t total = count(require(node, path, "total_steps"), path + ".total_steps");
      CutPlan plan;
      if (node["cut_steps"]) {
        plan.total_steps = total;
        plan.decay_per_cut = alpha;
        for (double s : number_list(node["cut_steps"], path + ".cut_steps")) {
          plan.cut_steps.push_back(static_cast<std::uint64_t>(s));
        }
      } else {
        plan = cosine_to_step_cuts(total, alpha);
      }
      ScheduleSpec spec = kind == "seesaw" ? seesaw_from_cut_plan(plan, lr, batch, family)
                                           : reference_from_cut_plan(plan, lr, batch, family);
      return {name, kind, std::move(spec)};
    }
  } catch (const InvalidArgument& e) {
    throw ConfigError(path, line_of(node), e.what());
  }
  throw ConfigError(path + ".kind", line_of(node["kind"]),
                    "unknown schedule kind '" + kind +
                        "' (constant | step_decay | batch_ramp | seesaw | cosine_steps)");
}

McConfig parse_mc(const YAML::Node& node) {
  const std::string path = "run.mc";
  check_keys(node, path, {"trials", "seed", "record_every", "workers", "max_dimension"});
  McConfig mc;
  if (node["trials"]) mc.trials = count(node["trials"], path + ".trials");
  if (node["seed"]) mc.seed = scalar<std::uint64_t>(node["seed"], path + ".seed");
  if (node["record_every"]) mc.record_every = count(node["record_every"], path + ".record_every");
  if (node["workers"]) mc.workers = static_cast<unsigned>(count(node["workers"], path + ".workers"));
  if (node["max_dimension"]) mc.max_dimension = count(node["max_dimension"], path + ".max_dimension");
  if (mc.trials < 2) {
    throw ConfigError(path + ".trials", line_of(node["trials"]), "must be >= 2");
  }
  if (mc.record_every == 0) {
    throw ConfigError(path + ".record_every", line_of(node["record_every"]), "must be >= 1");
  }
  return mc;
}

OutputSettings parse_output(const YAML::Node& node) {
  const std::string path = "output";
  check_keys(node, path, {"directory", "formats", "record_stride"});
  OutputSettings out;
  if (node["directory"]) out.directory = scalar<std::string>(node["directory"], path + ".directory");
  if (node["record_stride"]) {
    out.record_stride = count(node["record_stride"], path + ".record_stride");
    if (out.record_stride == 0) {
      throw ConfigError(path + ".record_stride", line_of(node["record_stride"]), "must be >= 1");
    }
  }
  if (node["formats"]) {
    const YAML::Node formats = node["formats"];
    if (!formats.IsSequence()) {
      throw ConfigError(path + ".formats", line_of(formats), "expected a list");
    }
    out.csv = out.json = out.svg = false;
    for (const auto& f : formats) {
      const std::string format = scalar<std::string>(f, path + ".formats");
      if (format == "csv") {
        out.csv = true;
      } else if (format == "json") {
        out.json = true;
      } else if (format == "svg") {
        out.svg = true;
      } else {
        throw ConfigError(path + ".formats", line_of(f), "unknown format '" + format + "' (csv | json | svg)");
      }
    }
  }
  return out;
}

} // namespace

const NamedSchedule& ExperimentConfig::schedule(const std::string& name) const {
  for (const NamedSchedule& s : schedules) {
    if (s.name == name) {
      return s;
    }
  }
  throw ConfigError("schedules." + name, 0, "no schedule block named '" + name + "'");
}

std::string_view to_string(Engine engine) noexcept {
  switch (engine) {
  case Engine::exact:
    return "exact";
  case Engine::mc:
    return "mc";
  case Engine::both:
    return "both";
  }
  return "exact";
}

Engine parse_engine(std::string_view text) {
  if (text == "exact") return Engine::exact;
  if (text == "mc") return Engine::mc;
  if (text == "both") return Engine::both;
  throw ConfigError("run.engine", 0, "unknown engine '" + std::string(text) + "' (exact | mc | both)");
}

ExperimentConfig parse_config_string(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    throw ConfigError("<document>", e.mark.line + 1, e.msg);
  }
  if (!root || !root.IsMap()) {
    throw ConfigError("<document>", 0, "config must be a mapping");
  }
  check_keys(root, "", {"problem", "schedules", "run", "output"});

  const YAML::Node run = root["run"];
  OptimizerFamily family = OptimizerFamily::sgd;
  Engine engine = Engine::exact;
  NsgdMode mode = NsgdMode::variance_dominated;
  std::optional<McConfig> mc;
  std::vector<std::string> compare;
  double lr_inflation = 1.01;
  if (run) {
    check_keys(run, "run", {"engine", "family", "nsgd_mode", "mc", "compare", "lr_inflation"});
    if (run["engine"]) {
      const YAML::Node n = run["engine"];
      try {
        engine = parse_engine(scalar<std::string>(n, "run.engine"));
      } catch (const ConfigError& e) {
        throw ConfigError("run.engine", line_of(n), e.what());
      }
    }
    if (run["family"]) {
      const std::string f = scalar<std::string>(run["family"], "run.family");
      if (f == "sgd") {
        family = OptimizerFamily::sgd;
      } else if (f == "nsgd") {
        family = OptimizerFamily::nsgd;
      } else {
        throw ConfigError("run.family", line_of(run["family"]), "unknown family '" + f + "' (sgd | nsgd)");
      }
    }
    if (run["nsgd_mode"]) {
      const std::string m = scalar<std::string>(run["nsgd_mode"], "run.nsgd_mode");
      if (m == "variance_dominated") {
        mode = NsgdMode::variance_dominated;
      } else if (m == "full_denominator") {
        mode = NsgdMode::full_denominator;
      } else {
        throw ConfigError("run.nsgd_mode", line_of(run["nsgd_mode"]),
                          "unknown mode '" + m + "' (variance_dominated | full_denominator)");
      }
    }
    if (run["mc"]) {
      mc = parse_mc(run["mc"]);
    }
    if (run["compare"]) {
      const YAML::Node c = run["compare"];
      if (!c.IsSequence() || c.size() != 2) {
        throw ConfigError("run.compare", line_of(c), "expected a list of two schedule names");
      }
      compare = {scalar<std::string>(c[0], "run.compare[0]"), scalar<std::string>(c[1], "run.compare[1]")};
    }
    if (run["lr_inflation"]) {
      lr_inflation = number(run["lr_inflation"], "run.lr_inflation");
      if (!(lr_inflation >= 1.0)) {
        throw ConfigError("run.lr_inflation", line_of(run["lr_inflation"]), "must be >= 1");
      }
    }
  }
  if ((engine == Engine::mc || engine == Engine::both) && !mc) {
    throw ConfigError("run.mc", run ? line_of(run) : 0, "engine '" + std::string(to_string(engine)) +
                                                           "' requires an mc block");
  }

  ExperimentConfig config{parse_problem(require(root, "", "problem")), {}, engine, family, mode,
                          mc, compare, lr_inflation, {}};

  const YAML::Node schedules = require(root, "", "schedules");
  if (!schedules.IsMap() || schedules.size() == 0) {
    throw ConfigError("schedules", line_of(schedules), "expected at least one named schedule");
  }
  for (const auto& entry : schedules) {
    config.schedules.push_back(parse_schedule(entry.first.as<std::string>(), entry.second, family));
  }
  for (std::size_t i = 0; i < config.compare.size(); ++i) {
    const std::string& name = config.compare[i];
    bool found = false;
    for (const auto& s : config.schedules) {
      found = found || s.name == name;
    }
    if (!found) {
      throw ConfigError("run.compare[" + std::to_string(i) + "]", line_of(run["compare"][i]),
                        "no schedule block named '" + name + "'");
    }
  }
  if (root["output"]) {
    config.output = parse_output(root["output"]);
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("<file>", 0, "cannot open config '" + path + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_string(buffer.str());
}

} // namespace seesaw::cli
