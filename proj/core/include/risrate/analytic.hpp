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

#ifndef RISRATE_ANALYTIC_HPP
#define RISRATE_ANALYTIC_HPP

#include "risrate/budget.hpp"
#include "risrate/channel.hpp"
#include "risrate/common.hpp"
#include "risrate/transceiver.hpp"

#include <cstddef>
#include <vector>

namespace risrate
{

/// Phase-dependent deterministic quantities that the closed-form moments of
/// the cascaded channel are built from.
struct DeterministicStats
{
    int M = 0;
    int N = 0;
    double delta = 0.0;
    double beta = 0.0;
    std::vector<double> epsilon;
    std::vector<double> alpha;

    std::vector<cdouble> f;  ///< f_k = a_N^H(RIS AoD) Phi hbar_k
    std::vector<double> u;   ///< u_k = beta alpha_k / ((delta+1)(eps_k+1))
    CMatrix hbar_inner;      ///< K x K, hbar_k^H hbar_i

    std::size_t users() const { return f.size(); }
};

DeterministicStats compute_stats(const Geometry &geom, const LosComponents &los,
                                 const SystemConfig &cfg, const PhaseConfig &phi);
DeterministicStats compute_stats(const Geometry &geom, const SystemConfig &cfg,
                                 const PhaseConfig &phi);

/// Switches that reproduce the printed form of the pairwise moment, kept to
/// document how it disagrees with simulation. Defaults are the forms that
/// match the defining expectations.
struct ClosedFormOptions
{
    /// u_k^2 u_i^2 prefactor on the pairwise moment instead of u_k u_i.
    bool printed_pair_prefactor = false;
    /// Re{conj(f_k) f_i hbar_k^H hbar_i} instead of Re{f_k conj(f_i) hbar_k^H hbar_i}
    /// in the pairwise and quantization moments.
    bool printed_cross_conjugation = false;
    /// Drop the N(1+eps_k+eps_i) + eps_k eps_i |hbar_k^H hbar_i|^2 covariance term from the
    /// per-antenna cross moment E|g_km|^2 |g_im|^2 in the quantization-noise moment.
    bool printed_quantization_moment = false;
};

// Closed-form moments of the cascaded channel g_k = eta H2 Phi h_k.
double gamma1(const DeterministicStats &s, std::size_t k, double eta);  ///< E||g_k||^4
double gamma2(const DeterministicStats &s, std::size_t k, std::size_t i, double eta,
              ClosedFormOptions opts = {});                             ///< E|g_k^H g_i|^2
double gamma3(const DeterministicStats &s, std::size_t k, double eta);  ///< E||g_k^H H2 Phi||^2
double gamma4(const DeterministicStats &s, std::size_t k, double eta);  ///< E||g_k||^2
/// E{g_k^H diag(p_k G G^H + sigma_n^2 I) g_k}
double gamma5(const DeterministicStats &s, std::size_t k, const LinkBudget &budget,
              ClosedFormOptions opts = {});

/// Approximate ergodic rate of user k using budget.eta, sigma_v2 and
/// adc_alpha. Zero when the startup condition fails.
double rate_theorem1(const DeterministicStats &s, const LinkBudget &budget, std::size_t k,
                     ClosedFormOptions opts = {});
/// Passive RIS: eta = 1 and no dynamic-noise term.
double rate_passive(const DeterministicStats &s, const LinkBudget &budget, std::size_t k,
                    ClosedFormOptions opts = {});
/// Active RIS with ideal ADCs: no quantization term.
double rate_ideal(const DeterministicStats &s, const LinkBudget &budget, std::size_t k,
                  ClosedFormOptions opts = {});

/// Dispatches on budget.mode.
double analytic_rate(const DeterministicStats &s, const LinkBudget &budget, std::size_t k,
                     ClosedFormOptions opts = {});
double analytic_sum_rate(const DeterministicStats &s, const LinkBudget &budget,
                         ClosedFormOptions opts = {});

} // namespace risrate

#endif
