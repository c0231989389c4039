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

#ifndef RISRATE_TRANSCEIVER_HPP
#define RISRATE_TRANSCEIVER_HPP

#include "risrate/budget.hpp"
#include "risrate/channel.hpp"
#include "risrate/common.hpp"
#include "risrate/config.hpp"

#include "risrate/stats.hpp"

#include <optional>
#include <span>
#include <vector>

namespace risrate
{

/// Linear gain alpha = 1 - rho of the additive quantization noise model.
/// rho is tabulated for 1..5 bits and (pi sqrt(3) / 2) 2^(-2b) above.
/// std::nullopt (ideal ADC) gives 1. Throws std::domain_error for bits <= 0.
double aqnm_alpha(std::optional<int> bits);

/// RIS phase shifts theta_n, always held in [0, 2pi).
class PhaseConfig
{
public:
    PhaseConfig() = default;
    explicit PhaseConfig(std::vector<double> theta);

    static PhaseConfig zeros(int N) { return PhaseConfig(std::vector<double>(N, 0.0)); }
    static PhaseConfig random(int N, Rng &rng);

    std::size_t size() const { return theta_.size(); }
    const std::vector<double> &theta() const { return theta_; }
    /// Diagonal of Phi: e^{j theta_n}.
    CVector diagonal() const;

private:
    std::vector<double> theta_;
};

/// G = eta H2 Phi H1 (M x K). Throws std::invalid_argument on dimension mismatch.
CMatrix cascaded_channel(const ChannelRealization &ch, const PhaseConfig &phi, double eta);

struct ReceiverOptions
{
    bool strict_aqnm = false;
};

/// Per-user SINR after AQNM quantization and MRC combining for one channel
/// draw. Returns all zeros when the budget's startup condition is not met.
std::vector<double> instantaneous_sinr(const ChannelRealization &ch, const PhaseConfig &phi,
                                       const LinkBudget &budget, ReceiverOptions opts = {});

struct RateReport
{
    bool startup_met = false;
    std::vector<double> per_user_rate; ///< bits/s/Hz
    std::vector<double> std_err;
    double sum_rate = 0.0;
    double sum_std_err = 0.0;
    int trials_used = 0;
};

/// Ergodic rate E{log2(1 + SINR_k)} averaged over cfg.trials fading draws.
/// Trial t uses the (cfg.seed, Fading, t) stream.
RateReport monte_carlo_rate(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi,
                            const LinkBudget &budget);

/// Monte Carlo estimate of the RIS output power E{||A Phi H1 P x + A Phi v||^2}
/// with unit-power Gaussian symbols and v ~ CN(0, sigma_v^2 I).
Estimate measured_ris_power(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi,
                            const LinkBudget &budget, int trials);

/// Number of OpenMP threads in use (1 without OpenMP).
int worker_threads();

} // namespace risrate

#endif
