// Copyright 2026 The risrate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "risrate/analytic.hpp"
#include "risrate/channel.hpp"
#include "risrate/ga.hpp"
#include "risrate/transceiver.hpp"

#include <benchmark/benchmark.h>

namespace
{

using namespace risrate;

SystemConfig sized(int M, int N)
{
    SystemConfig cfg;
    cfg.M = M;
    cfg.N = N;
    cfg.broadcast_epsilon();
    return cfg;
}

PhaseConfig phases(const SystemConfig &cfg)
{
    Rng rng = make_stream(cfg.seed, Stream::Phases, 0);
    return PhaseConfig::random(cfg.N, rng);
}

void BM_ChannelDraw(benchmark::State &state)
{
    const SystemConfig cfg = sized(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const ChannelSampler sampler(make_geometry(cfg), cfg);
    ChannelRealization ch;
    std::uint64_t t = 0;
    for (auto _ : state)
    {
        Rng rng = make_stream(cfg.seed, Stream::Fading, t++);
        sampler.sample_into(rng, ch);
        benchmark::DoNotOptimize(ch.H2.data());
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ChannelDraw)->Args({16, 4})->Args({64, 16})->Args({144, 64});

void BM_InstantaneousSinr(benchmark::State &state)
{
    const SystemConfig cfg = sized(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
    const Geometry geom = make_geometry(cfg);
    const ChannelSampler sampler(geom, cfg);
    Rng rng = make_stream(cfg.seed, Stream::Fading, 0);
    const ChannelRealization ch = sampler.sample(rng);
    const PhaseConfig phi = phases(cfg);
    const LinkBudget b = resolve_budget(cfg, geom.alpha, Mode::Active);
    for (auto _ : state)
        benchmark::DoNotOptimize(instantaneous_sinr(ch, phi, b));
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_InstantaneousSinr)->Args({16, 4})->Args({64, 16})->Args({144, 64});

void BM_MonteCarloRate(benchmark::State &state)
{
    SystemConfig cfg = sized(64, 16);
    cfg.trials = static_cast<int>(state.range(0));
    const Geometry geom = make_geometry(cfg);
    const PhaseConfig phi = phases(cfg);
    const LinkBudget b = resolve_budget(cfg, geom.alpha, Mode::Active);
    for (auto _ : state)
        benchmark::DoNotOptimize(monte_carlo_rate(geom, cfg, phi, b).sum_rate);
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloRate)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_AnalyticSumRate(benchmark::State &state)
{
    const SystemConfig cfg = sized(64, static_cast<int>(state.range(0)));
    const Geometry geom = make_geometry(cfg);
    const LosComponents los = los_components(geom, cfg);
    const PhaseConfig phi = phases(cfg);
    const LinkBudget b = resolve_budget(cfg, geom.alpha, Mode::Active);
    for (auto _ : state)
        benchmark::DoNotOptimize(analytic_sum_rate(compute_stats(geom, los, cfg, phi), b));
}
BENCHMARK(BM_AnalyticSumRate)->Arg(16)->Arg(64)->Arg(256);

void BM_GeneticOptimizer(benchmark::State &state)
{
    const SystemConfig cfg = sized(64, 16);
    const Geometry geom = make_geometry(cfg);
    const LinkBudget b = resolve_budget(cfg, geom.alpha, Mode::Active);
    GAParams p;
    p.max_iterations = 20;
    p.min_mean_change = 0.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(optimize_phases(geom, cfg, b, p).best_fitness);
}
BENCHMARK(BM_GeneticOptimizer)->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
