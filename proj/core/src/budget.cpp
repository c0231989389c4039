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

#include "risrate/budget.hpp"
#include "risrate/transceiver.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace risrate
{

double dbm_to_watts(double x_dbm) { return std::pow(10.0, (x_dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double path_loss(double distance_m, double exponent)
{
    if (!(distance_m > 0.0))
        throw std::domain_error("path_loss: distance must be positive");
    return std::pow(10.0, (-30.0 - 10.0 * exponent * std::log10(distance_m)) / 10.0);
}

double startup_threshold(const SystemConfig &cfg, Mode mode)
{
    const double per_element = mode == Mode::Passive
                                   ? dbm_to_watts(cfg.P_SW_dbm)
                                   : dbm_to_watts(cfg.P_SW_dbm) + dbm_to_watts(cfg.P_DC_dbm);
    return cfg.N * per_element;
}

double amplification_gain(double P_A, int N, double sum_p_alpha, double sigma_v2)
{
    return std::sqrt(P_A / (N * (sum_p_alpha + sigma_v2)));
}

LinkBudget resolve_budget(const SystemConfig &cfg, std::span<const double> alpha, Mode mode)
{
    if (alpha.size() != static_cast<std::size_t>(cfg.K))
        throw ConfigError("resolve_budget: need one large-scale gain per user");

    LinkBudget b;
    b.mode = mode;
    b.total_power = dbm_to_watts(cfg.P_T_dbm);
    b.circuit_power = startup_threshold(cfg, mode);
    b.sigma_n2 = dbm_to_watts(cfg.sigma_n2_dbm);
    b.sigma_v2 = mode == Mode::Passive ? 0.0 : dbm_to_watts(cfg.sigma_v2_dbm);
    b.adc_alpha = mode == Mode::IdealAdc ? 1.0 : aqnm_alpha(cfg.adc_bits);
    b.p.assign(static_cast<std::size_t>(cfg.K), 0.0);

    if (!(b.sigma_n2 > 0.0) || (mode != Mode::Passive && !(b.sigma_v2 > 0.0)))
        throw ConfigError("noise powers must resolve to positive values");

    b.startup_met = b.total_power >= b.circuit_power;
    if (!b.startup_met)
    {
        b.eta = mode == Mode::Passive ? 1.0 : 0.0;
        return b;
    }

    const double remaining = b.total_power - b.circuit_power;
    if (mode == Mode::Passive)
    {
        // The DC bias power an active surface would burn goes to the users.
        b.P_t = remaining;
        b.P_A = 0.0;
        b.eta = 1.0;
    }
    else
    {
        b.P_t = cfg.split * remaining;
        b.P_A = remaining - b.P_t;
    }
    const double per_user = b.P_t / cfg.K;
    if (!(per_user > 0.0))
        throw ConfigError("resolved transmit power is not positive (P_T equals the circuit power)");
    b.p.assign(static_cast<std::size_t>(cfg.K), per_user);

    if (mode != Mode::Passive)
    {
        if (!(b.P_A > 0.0))
            throw ConfigError("resolved RIS reflect power is not positive");
        double sum_p_alpha = 0.0;
        for (std::size_t k = 0; k < alpha.size(); ++k)
            sum_p_alpha += b.p[k] * alpha[k];
        b.eta = amplification_gain(b.P_A, cfg.N, sum_p_alpha, b.sigma_v2);
        if (b.eta < 1.0)
            throw ConfigError("active RIS amplification resolves to eta = " + std::to_string(b.eta) +
                              " < 1; the power budget cannot drive an amplifying surface");
    }
    return b;
}

} // namespace risrate
