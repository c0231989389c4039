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

#ifndef RISRATE_BUDGET_HPP
#define RISRATE_BUDGET_HPP

#include "risrate/common.hpp"
#include "risrate/config.hpp"

#include <span>
#include <vector>

namespace risrate
{

double dbm_to_watts(double x_dbm);
double watts_to_dbm(double watts);

/// Large-scale power gain for the log-distance model
/// -30 - 10 * exponent * log10(distance) dB. Throws std::domain_error for
/// distance <= 0.
double path_loss(double distance_m, double exponent);

/// Resolved, linear-scale power state of one experiment. Noise powers and the
/// ADC gain are folded in here so downstream code never touches dBm.
struct LinkBudget
{
    Mode mode = Mode::Active;
    bool startup_met = false;

    std::vector<double> p; ///< per-user transmit power [W]
    double eta = 1.0;      ///< common RIS amplification factor
    double P_t = 0.0;      ///< total user transmit power [W]
    double P_A = 0.0;      ///< RIS reflect power [W], 0 when passive
    double circuit_power = 0.0;
    double total_power = 0.0;

    double sigma_n2 = 0.0; ///< AWGN power [W]
    double sigma_v2 = 0.0; ///< dynamic noise [W], 0 when passive
    double adc_alpha = 1.0;
};

/// Circuit power the RIS needs before it produces any output:
/// N (P_SW + P_DC) when active, N P_SW when passive.
double startup_threshold(const SystemConfig &cfg, Mode mode);

/// Amplification factor that makes the RIS output power equal P_A:
/// eta^2 N (sum_k p_k alpha_k + sigma_v^2) = P_A.
double amplification_gain(double P_A, int N, double sum_p_alpha, double sigma_v2);

/// Split P_T into circuit, transmit and (active) reflect power. `alpha` holds the
/// user-RIS large-scale gains. When the startup condition fails the budget is
/// returned with startup_met = false and zero powers. Throws ConfigError if an
/// active budget resolves to eta < 1 or any power is nonpositive.
LinkBudget resolve_budget(const SystemConfig &cfg, std::span<const double> alpha, Mode mode);

} // namespace risrate

#endif
