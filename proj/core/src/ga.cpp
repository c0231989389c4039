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

#include "risrate/ga.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>

namespace risrate
{

void GAParams::validate() const
{
    if (population < 2)
        throw ConfigError("GA population must be at least 2");
    if (elites < 1)
        throw ConfigError("GA needs at least one elite");
    if (elites + crossover_offspring + mutation_offspring != population)
        throw ConfigError("GA counts: elites + crossover_offspring + mutation_offspring must equal population");
    if (crossover_offspring > 0 && parents < 1)
        throw ConfigError("GA crossover needs at least one parent");
    if (parents < 0 || mutation_offspring < 0 || crossover_offspring < 0)
        throw ConfigError("GA counts must be nonnegative");
    if (parents + mutation_offspring > population - elites)
        throw ConfigError("GA counts: parents plus mutated individuals exceed the non-elite pool");
    if (!(mutation_sigma > 0.0))
        throw ConfigError("GA mutation_sigma must be positive");
    if (max_iterations < 1 || window < 1)
        throw ConfigError("GA max_iterations and window must be positive");
}

std::vector<double> crossover(const std::vector<double> &a, const std::vector<double> &b, Rng &rng)
{
    std::bernoulli_distribution coin(0.5);
    std::vector<double> child(a.size());
    for (std::size_t n = 0; n < a.size(); ++n)
        child[n] = coin(rng) ? a[n] : b[n];
    return child;
}

std::vector<double> mutate(const std::vector<double> &x, double sigma, Rng &rng)
{
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<double> y(x.size());
    for (std::size_t n = 0; n < x.size(); ++n)
        y[n] = wrap_phase(x[n] + sigma * noise(rng));
    return y;
}

void GAHistory::write_csv(std::ostream &os) const
{
    os << "generation,best,mean\n";
    char buf[96];
    for (const auto &g : generations)
    {
        std::snprintf(buf, sizeof buf, "%d,%.12g,%.12g\n", g.generation, g.best, g.mean);
        os << buf;
    }
}

namespace
{

using Individual = std::vector<double>;

// Selection weights: fitness shifted to be positive so that negative or
// constant landscapes still give a valid (uniform in the limit) roulette.
std::vector<double> roulette_weights(const std::vector<double> &fitness, const std::vector<int> &pool)
{
    double lo = fitness[static_cast<std::size_t>(pool.front())];
    double hi = lo;
    for (int idx : pool)
    {
        lo = std::min(lo, fitness[static_cast<std::size_t>(idx)]);
        hi = std::max(hi, fitness[static_cast<std::size_t>(idx)]);
    }
    const double floor = hi > lo ? 1e-3 * (hi - lo) : 1.0;
    std::vector<double> w;
    w.reserve(pool.size());
    for (int idx : pool)
        w.push_back(fitness[static_cast<std::size_t>(idx)] - lo + floor);
    return w;
}

std::size_t spin(const std::vector<double> &w, Rng &rng)
{
    const double total = std::accumulate(w.begin(), w.end(), 0.0);
    std::uniform_real_distribution<double> unit(0.0, total);
    double target = unit(rng);
    for (std::size_t j = 0; j < w.size(); ++j)
    {
        if (w[j] <= 0.0)
            continue;
        target -= w[j];
        if (target < 0.0)
            return j;
    }
    for (std::size_t j = w.size(); j-- > 0;)
        if (w[j] > 0.0)
            return j;
    return 0;
}

void evaluate(const Fitness &fitness, const std::vector<Individual> &pop, std::vector<double> &fit, int from)
{
    const int n = static_cast<int>(pop.size());
#pragma omp parallel for schedule(dynamic)
    for (int i = from; i < n; ++i)
        fit[static_cast<std::size_t>(i)] = fitness(PhaseConfig(pop[static_cast<std::size_t>(i)]));
}

} // namespace

GAResult optimize_phases(const Fitness &fitness, int N, const GAParams &params)
{
    params.validate();
    if (N < 1)
        throw ConfigError("GA needs at least one phase shift");

    Rng rng = make_stream(params.seed, Stream::Genetic);
    std::uniform_real_distribution<double> unit(0.0, two_pi);

    std::vector<Individual> pop(static_cast<std::size_t>(params.population), Individual(static_cast<std::size_t>(N)));
    for (auto &ind : pop)
        for (double &g : ind)
            g = unit(rng);
    std::vector<double> fit(pop.size());
    evaluate(fitness, pop, fit, 0);

    GAResult result;
    result.best_fitness = -std::numeric_limits<double>::infinity();
    std::vector<double> mean_history;

    for (int gen = 0;; ++gen)
    {
        std::vector<int> order(pop.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fit[static_cast<std::size_t>(a)] > fit[static_cast<std::size_t>(b)]; });

        const double best = fit[static_cast<std::size_t>(order.front())];
        const double mean = std::accumulate(fit.begin(), fit.end(), 0.0) / static_cast<double>(fit.size());
        if (best > result.best_fitness)
        {
            result.best_fitness = best;
            result.history.best_theta = pop[static_cast<std::size_t>(order.front())];
        }
        result.history.generations.push_back({gen, best, mean});
        mean_history.push_back(mean);

        if (gen + 1 >= params.max_iterations)
            break;
        if (gen >= params.window)
        {
            double change = 0.0;
            for (int w = 0; w < params.window; ++w)
            {
                const auto g = static_cast<std::size_t>(gen - w);
                change += std::abs(mean_history[g] - mean_history[g - 1]);
            }
            if (change / params.window < params.min_mean_change)
                break;
        }

        std::vector<Individual> next;
        std::vector<double> next_fit;
        next.reserve(pop.size());
        for (int e = 0; e < params.elites; ++e)
        {
            next.push_back(pop[static_cast<std::size_t>(order[static_cast<std::size_t>(e)])]);
            next_fit.push_back(fit[static_cast<std::size_t>(order[static_cast<std::size_t>(e)])]);
        }

        // Parents come from the non-elites only.
        std::vector<int> pool(order.begin() + params.elites, order.end());
        std::vector<int> parents;
        {
            auto w = roulette_weights(fit, pool);
            for (int p = 0; p < params.parents; ++p)
            {
                const std::size_t j = spin(w, rng);
                parents.push_back(pool[j]);
                w[j] = 0.0;
            }
        }
        std::vector<int> remaining;
        for (int idx : pool)
            if (std::find(parents.begin(), parents.end(), idx) == parents.end())
                remaining.push_back(idx); // still in fitness order

        if (params.crossover_offspring > 0)
        {
            const auto w = roulette_weights(fit, parents);
            for (int c = 0; c < params.crossover_offspring; ++c)
            {
                const auto &a = pop[static_cast<std::size_t>(parents[spin(w, rng)])];
                const auto &b = pop[static_cast<std::size_t>(parents[spin(w, rng)])];
                next.push_back(crossover(a, b, rng));
            }
        }
        for (int d = 0; d < params.mutation_offspring; ++d)
            next.push_back(mutate(pop[static_cast<std::size_t>(remaining[static_cast<std::size_t>(d)])],
                                  params.mutation_sigma, rng));

        pop = std::move(next);
        fit.assign(pop.size(), 0.0);
        std::copy(next_fit.begin(), next_fit.end(), fit.begin());
        evaluate(fitness, pop, fit, params.elites);
    }

    result.best = PhaseConfig(result.history.best_theta);
    return result;
}

GAResult optimize_phases(const Geometry &geom, const SystemConfig &cfg, const LinkBudget &budget,
                         const GAParams &params)
{
    if (!budget.startup_met)
        throw ConfigError("GA phase optimization needs a budget that meets the startup condition");
    const LosComponents los = los_components(geom, cfg);
    const Fitness fitness = [&](const PhaseConfig &phi) {
        return analytic_sum_rate(compute_stats(geom, los, cfg, phi), budget);
    };
    return optimize_phases(fitness, cfg.N, params);
}

} // namespace risrate
