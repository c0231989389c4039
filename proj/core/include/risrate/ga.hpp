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

#ifndef RISRATE_GA_HPP
#define RISRATE_GA_HPP

#include "risrate/analytic.hpp"
#include "risrate/budget.hpp"
#include "risrate/channel.hpp"
#include "risrate/transceiver.hpp"

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

namespace risrate
{

/// Real-coded genetic algorithm settings. Each generation keeps `elites`
/// individuals, draws `parents` non-elites by roulette for crossover into
/// `crossover_offspring` children, and mutates the remaining non-elites into
/// `mutation_offspring` children.
struct GAParams
{
    int population = 200;
    int elites = 20;
    int parents = 144;
    int crossover_offspring = 144;
    int mutation_offspring = 36;
    double mutation_sigma = 3.14159265358979323846 / 8.0;
    int max_iterations = 100;
    double min_mean_change = 1e-4; ///< stop once the windowed mean fitness change drops below
    int window = 10;
    std::uint64_t seed = 1;

    /// Throws ConfigError if the counts are inconsistent.
    void validate() const;
};

struct GAGeneration
{
    int generation = 0;
    double best = 0.0;
    double mean = 0.0;
};

struct GAHistory
{
    std::vector<GAGeneration> generations;
    std::vector<double> best_theta;

    void write_csv(std::ostream &os) const;
};

struct GAResult
{
    PhaseConfig best;
    double best_fitness = 0.0;
    GAHistory history;
};

using Fitness = std::function<double(const PhaseConfig &)>;

/// Per-gene uniform choice between the parents.
std::vector<double> crossover(const std::vector<double> &a, const std::vector<double> &b, Rng &rng);
/// Adds N(0, sigma^2) to every gene and wraps into [0, 2pi).
std::vector<double> mutate(const std::vector<double> &x, double sigma, Rng &rng);

/// Maximize `fitness` over N phase shifts. Fitness must be a pure function;
/// evaluations inside a generation may run concurrently.
GAResult optimize_phases(const Fitness &fitness, int N, const GAParams &params);

/// Maximize the closed-form sum rate for the given geometry and budget.
GAResult optimize_phases(const Geometry &geom, const SystemConfig &cfg, const LinkBudget &budget,
                         const GAParams &params);

} // namespace risrate

#endif
