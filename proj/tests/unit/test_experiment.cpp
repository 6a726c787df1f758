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

#include <doctest.h>

#include <sstream>
#include <string>

#include "seesaw/cli/experiment.hpp"
#include "seesaw/cli/suites.hpp"
#include "seesaw/cli/svg_plot.hpp"
#include "seesaw/error.hpp"

using namespace seesaw;
using namespace seesaw::cli;

namespace {

std::string first_line(const std::string& text) { return text.substr(0, text.find('\n')); }

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += c == '\n';
  return n;
}

} // namespace

TEST_CASE("exact run of the minimal config") {
  const ExperimentResult r = run_experiment(load_config(SEESAW_TEST_DATA_DIR "/minimal.yaml"));
  REQUIRE(r.artifacts.count("flat.exact.csv") == 1);
  const std::string& csv = r.artifacts.at("flat.exact.csv");
  CHECK(first_line(csv) == "step,samples,lr,batch,excess_risk,bias_risk,variance_risk");
  CHECK(line_count(csv) == 1002);
  CHECK(r.artifacts.count("summary.json") == 0);
}

TEST_CASE("guard failures and overrides") {
  const ExperimentConfig c = load_config(SEESAW_TEST_DATA_DIR "/divergent.yaml");
  CHECK_THROWS_AS(run_experiment(c), GuardFailure);
  RunOverrides o;
  o.allow_divergent = true;
  const ExperimentResult r = run_experiment(c, o);
  CHECK_FALSE(r.warnings.empty());
  RunOverrides need;
  need.require_compare = true;
  CHECK_THROWS_AS(run_experiment(load_config(SEESAW_TEST_DATA_DIR "/minimal.yaml"), need), ConfigError);
}

TEST_CASE("reruns are byte identical across worker counts") {
  ExperimentConfig c = load_config(SEESAW_CONFIG_DIR "/seesaw_vs_step_decay.yaml");
  c.mc->trials = 40;
  const ExperimentResult a = run_experiment(c);
  const ExperimentResult b = run_experiment(c);
  RunOverrides o;
  o.workers = 3;
  const ExperimentResult d = run_experiment(c, o);
  CHECK(a.artifacts == b.artifacts);
  CHECK(a.artifacts == d.artifacts);
  for (const char* name : {"seesaw.exact.csv", "seesaw.mc.csv", "step_decay.exact.csv", "compare.csv",
                           "compare.json", "summary.json", "risk_vs_samples.svg"}) {
    CAPTURE(name);
    CHECK(a.artifacts.count(name) == 1);
  }
  o.seed = 8;
  CHECK(run_experiment(c, o).artifacts.at("seesaw.mc.csv") != a.artifacts.at("seesaw.mc.csv"));
}

TEST_CASE("suites are listed and unknown names rejected") {
  const auto names = builtin_suites();
  CHECK(names.size() == 8);
  CHECK_THROWS_AS(run_suite("nope", {}), InvalidArgument);
  const SuiteResult r = run_suite("ngd-cycle", {});
  CHECK(r.passed);
  CHECK(r.artifacts.count("summary.json") == 1);
}

TEST_CASE("svg rendering") {
  const Series s = series_from_csv_text("step,risk\n1,1\n10,0.1\n100,0.01\n", "step", "risk", "demo");
  CHECK(s.x.size() == 3);
  PlotSpec spec;
  spec.log_x = true;
  const std::string svg = render_svg({s}, spec);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("demo") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK_THROWS(series_from_csv_text("a,b\n1,2\n", "a", "c", "x"));
}
