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

#include "seesaw/dynamics.hpp"
#include "seesaw/nsgd.hpp"

using namespace seesaw;

static void BM_Advance(benchmark::State& st) {
  const auto d = static_cast<std::size_t>(st.range(0));
  const ProblemInstance p = make_deterministic_problem(make_power_law_spectrum(d, 1.0), 1.0);
  StateMoments s = StateMoments::initial(p);
  const double eta = 0.5 * max_theorem_lr(p.spectrum());
  for (auto _ : st) {
    advance(s, eta, 4.0, p);
    benchmark::DoNotOptimize(s.m.data());
  }
  st.SetItemsProcessed(st.iterations());
}
BENCHMARK(BM_Advance)->Arg(8)->Arg(64)->Arg(1024);

static void BM_EvolveSeesaw(benchmark::State& st) {
  const ProblemInstance p = make_deterministic_problem(make_power_law_spectrum(64, 1.0), 1.0);
  const CutPlan plan = cosine_to_step_cuts(10'000, 2.0);
  const ScheduleSpec s = seesaw_from_cut_plan(plan, 0.5 * max_theorem_lr(p.spectrum()), 4.0, OptimizerFamily::sgd);
  for (auto _ : st) {
    benchmark::DoNotOptimize(evolve(p, s).final_record().excess_risk);
  }
}
BENCHMARK(BM_EvolveSeesaw)->Unit(benchmark::kMillisecond);

static void BM_NsgdFullDenominator(benchmark::State& st) {
  const ProblemInstance p = make_deterministic_problem(make_power_law_spectrum(64, 1.0), 1.0);
  const ScheduleSpec s = make_constant_schedule(1e-4, 4.0, {40'000.0}, OptimizerFamily::nsgd);
  for (auto _ : st) {
    benchmark::DoNotOptimize(nsgd_evolve(p, s, NsgdMode::full_denominator).final_record().excess_risk);
  }
}
BENCHMARK(BM_NsgdFullDenominator)->Unit(benchmark::kMillisecond);
