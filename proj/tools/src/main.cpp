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

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seesaw/cli/artifacts.hpp"
#include "seesaw/cli/config.hpp"
#include "seesaw/cli/experiment.hpp"
#include "seesaw/cli/suites.hpp"
#include "seesaw/cli/svg_plot.hpp"
#include "seesaw/error.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kConfigError = 2;
constexpr int kGuardFailure = 3;

struct GlobalFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  bool allow_divergent = false;
  std::string engine;
  unsigned workers = 1;
};

namespace cli = seesaw::cli;

int run_config(const GlobalFlags& flags, std::optional<cli::Engine> forced, bool require_compare) {
  if (flags.config.empty()) {
    throw cli::ConfigError("--config", 0, "this subcommand needs --config <path>");
  }
  const cli::ExperimentConfig config = cli::load_config(flags.config);
  cli::RunOverrides overrides;
  overrides.seed = flags.seed;
  overrides.allow_divergent = flags.allow_divergent;
  overrides.workers = flags.workers;
  overrides.require_compare = require_compare;
  if (forced) {
    overrides.engine = forced;
  } else if (!flags.engine.empty()) {
    overrides.engine = cli::parse_engine(flags.engine);
  }
  const cli::ExperimentResult result = cli::run_experiment(config, overrides);
  const std::filesystem::path dir = flags.out.empty() ? config.output.directory : flags.out;
  cli::write_artifacts(result.artifacts, dir);
  for (const std::string& w : result.warnings) {
    std::cerr << "warning: " << w << '\n';
  }
  std::cout << "wrote " << result.artifacts.size() << " artifacts to " << dir.string() << '\n';
  return kOk;
}

int run_named_suite(const GlobalFlags& flags, const std::string& name) {
  cli::SuiteOptions options;
  if (flags.seed) options.seed = *flags.seed;
  options.workers = flags.workers;
  options.allow_divergent = flags.allow_divergent;
  const cli::SuiteResult result = cli::run_suite(name, options);
  const std::filesystem::path dir =
      flags.out.empty() ? std::filesystem::path("out") / name : std::filesystem::path(flags.out);
  cli::write_artifacts(result.artifacts, dir);
  std::cout << name << ": " << (result.passed ? "PASS" : "FAIL") << " (" << dir.string() << ")\n";
  for (const std::string& f : result.failures) {
    std::cout << "  " << f << '\n';
  }
  return result.passed ? kOk : kRuntimeFailure;
}

int run_speedup(const GlobalFlags& flags, std::uint64_t total_steps, const std::vector<double>& alphas) {
  if (alphas.empty()) {
    return run_named_suite(flags, "speedup");
  }
  const cli::Json report = cli::speedup_report(total_steps, alphas);
  std::cout << cli::dump_json(report);
  if (!flags.out.empty()) {
    cli::write_artifacts({{"speedup.json", cli::dump_json(report)}}, flags.out);
  }
  return kOk;
}

int run_plot(const GlobalFlags& flags, const std::vector<std::string>& files, const std::string& x_column,
             const std::string& y_column, bool log_x) {
  std::vector<cli::Series> series;
  for (const std::string& f : files) {
    series.push_back(cli::series_from_csv_file(f, x_column, y_column));
  }
  cli::PlotSpec spec;
  spec.title = y_column + " vs " + x_column;
  spec.x_label = x_column;
  spec.y_label = y_column;
  spec.log_x = log_x;
  const std::filesystem::path path = flags.out.empty() ? "plot.svg" : flags.out;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << cli::render_svg(series, spec);
  std::cout << "wrote " << path.string() << '\n';
  return kOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte Carlo dynamics of batch-size and learning-rate schedules"};
  app.require_subcommand(1);
  // Global flags may also follow the subcommand.
  app.fallthrough();
  GlobalFlags flags;
  std::uint64_t seed = 0;
  auto* seed_opt = app.add_option("--seed", seed, "Monte Carlo seed (u64)");
  app.add_option("--config", flags.config, "Experiment config (YAML)");
  app.add_option("--out", flags.out, "Output directory (plot: output file)");
  app.add_flag("--allow-divergent", flags.allow_divergent, "Evolve schedules that fail the divergence guard");
  app.add_option("--engine", flags.engine, "exact | mc | both")
      ->check(CLI::IsMember({"exact", "mc", "both"}));
  app.add_option("--workers", flags.workers, "Monte Carlo worker threads")->check(CLI::PositiveNumber);

  auto* evolve = app.add_subcommand("evolve", "Run every schedule of a config (engine from --engine or config)");
  auto* mc = app.add_subcommand("mc", "Run every schedule of a config with the Monte Carlo engine");
  auto* compare = app.add_subcommand("compare", "Run a config and its run.compare pair");
  auto* lemmas = app.add_subcommand("lemmas", "Numeric sweep of the two matrix lemmas");
  auto* speedup = app.add_subcommand("speedup", "Serial-step savings of Seesaw over cosine");
  std::uint64_t total_steps = 10'000;
  std::vector<double> alphas;
  speedup->add_option("--total-steps", total_steps, "Cosine horizon T");
  speedup->add_option("--alpha", alphas, "Cut factors (default: the speedup suite)");
  auto* suite = app.add_subcommand("suite", "Run a builtin suite");
  std::string suite_name;
  suite->add_option("name", suite_name, "Suite name")->required()->check(CLI::IsMember(cli::builtin_suites()));
  auto* plot = app.add_subcommand("plot", "Overlay CSV trajectories into an SVG");
  std::vector<std::string> files;
  std::string x_column = "samples";
  std::string y_column = "excess_risk";
  bool linear_x = false;
  plot->add_option("csv", files, "Trajectory CSV files")->required()->check(CLI::ExistingFile);
  plot->add_option("--x", x_column, "x column");
  plot->add_option("--y", y_column, "y column");
  plot->add_flag("--linear-x", linear_x, "Linear x axis");
  auto* list = app.add_subcommand("list", "List builtin suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }
  if (*seed_opt) flags.seed = seed;

  try {
    if (*evolve) return run_config(flags, std::nullopt, false);
    if (*mc) return run_config(flags, cli::Engine::mc, false);
    if (*compare) return run_config(flags, cli::Engine::exact, true);
    if (*lemmas) return run_named_suite(flags, "lemma-grid");
    if (*speedup) return run_speedup(flags, total_steps, alphas);
    if (*suite) return run_named_suite(flags, suite_name);
    if (*plot) return run_plot(flags, files, x_column, y_column, !linear_x);
    if (*list) {
      for (const std::string& name : cli::builtin_suites()) std::cout << name << '\n';
      return kOk;
    }
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const seesaw::GuardFailure& e) {
    std::cerr << "guard failure: " << e.what() << " (pass --allow-divergent to override)\n";
    return kGuardFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
  return kRuntimeFailure;
}
