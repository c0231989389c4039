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

#ifndef RISRATE_ORACLE_HPP
#define RISRATE_ORACLE_HPP

#include "risrate/budget.hpp"
#include "risrate/channel.hpp"
#include "risrate/stats.hpp"
#include "risrate/transceiver.hpp"

#include <cstdint>
#include <vector>

namespace risrate
{

// Brute-force sample means of the quantities the closed forms claim to
// evaluate. Nothing here shares code with analytic.cpp beyond channel
// generation.

struct GammaEstimates
{
    std::vector<Estimate> g1; ///< ||g_k||^4
    std::vector<Estimate> g3; ///< ||g_k^H H2 Phi||^2
    std::vector<Estimate> g4; ///< ||g_k||^2
    std::vector<Estimate> g5; ///< g_k^H diag(p_k G G^H + sigma_n^2 I) g_k
    /// K x K, row-major; entry (k, i) estimates |g_k^H g_i|^2. Diagonal unused.
    std::vector<Estimate> g2;
    int users = 0;

    const Estimate &pair(int k, int i) const { return g2[static_cast<std::size_t>(k * users + i)]; }
};

/// Throws std::invalid_argument if trials < 1000.
GammaEstimates estimate_gammas(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi,
                               const LinkBudget &budget, int trials, std::uint64_t seed);

/// Monte Carlo E{W W}, W = H2^H H2, against the central-Wishart approximation
/// M S (M S + tr(S) I) with S = beta/(1+delta) (I + delta/M H2bar^H H2bar).
struct WishartReport
{
    CMatrix monte_carlo;    ///< N x N sample mean of W W
    CMatrix approximation;  ///< N x N closed form
    CMatrix std_err;        ///< entrywise std errors (real and imaginary parts)
    double frobenius_rel_deviation = 0.0; ///< ||MC - approx||_F / ||approx||_F
    double max_abs_z = 0.0;               ///< largest |MC - approx| / std_err over entries
    double trace_sigma_bar = 0.0;
    int trials = 0;
};

/// Throws std::invalid_argument if trials < 10000.
WishartReport wishart_moment_check(const Geometry &geom, const SystemConfig &cfg, int trials,
                                   std::uint64_t seed);

/// E||g_k^H H2 Phi||^2 from the exact second moment of the non-central
/// Wishart matrix, for comparison with the approximate closed form.
/// Throws std::out_of_range for k >= K.
double exact_gamma3(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi, std::size_t k,
                    double eta);

} // namespace risrate

#endif
