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

#include <benchmark/benchmark.h>

#include "seesaw/montecarlo.hpp"

using namespace seesaw;

static void BM_SgdTrials(benchmark::State& st) {
  const auto d = static_cast<std::size_t>(st.range(0));
  const ProblemInstance p = make_deterministic_problem(make_power_law_spectrum(d, 1.0), 1.0);
  const ScheduleSpec s = make_constant_schedule(0.5 * max_theorem_lr(p.spectrum()), 4.0, {4000.0});
  McConfig config;
  config.trials = 100;
  config.record_every = 100;
  for (auto _ : st) {
    benchmark::DoNotOptimize(run_sgd_trials(p, s, config).records.back().mean_excess_risk);
  }
  st.SetItemsProcessed(st.iterations() * 100);
}
BENCHMARK(BM_SgdTrials)->Arg(1)->Arg(8)->Arg(64)->Unit(benchmark::kMillisecond);
