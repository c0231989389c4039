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

#include "risrate/config.hpp"

#include <cmath>
#include <string>

namespace risrate
{

std::string to_string(Mode mode)
{
    switch (mode)
    {
    case Mode::Active:
        return "active";
    case Mode::Passive:
        return "passive";
    case Mode::IdealAdc:
        return "ideal";
    }
    return "unknown";
}

Mode mode_from_string(const std::string &name)
{
    if (name == "active")
        return Mode::Active;
    if (name == "passive")
        return Mode::Passive;
    if (name == "ideal")
        return Mode::IdealAdc;
    throw ConfigError("unknown mode '" + name + "' (expected active, passive or ideal)");
}

int integer_sqrt(int n)
{
    if (n < 0)
        return -1;
    int r = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    while (r * r > n)
        --r;
    while ((r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

bool is_perfect_square(int n)
{
    if (n < 0)
        return false;
    const int r = integer_sqrt(n);
    return r * r == n;
}

void SystemConfig::broadcast_epsilon()
{
    if (K <= 0)
        return;
    const double fill = epsilon.empty() ? 0.0 : epsilon.back();
    epsilon.resize(static_cast<std::size_t>(K), fill);
}

void SystemConfig::validate() const
{
    if (M < 1)
        throw ConfigError("M must be positive, got " + std::to_string(M));
    if (N < 1)
        throw ConfigError("N must be positive, got " + std::to_string(N));
    if (K < 1)
        throw ConfigError("K must be at least 1");
    if (adc_bits && *adc_bits < 1)
        throw ConfigError("adc_bits must be >= 1 or ideal");
    if (epsilon.size() != static_cast<std::size_t>(K))
        throw ConfigError("epsilon needs K = " + std::to_string(K) + " entries, got " +
                          std::to_string(epsilon.size()));
    for (double e : epsilon)
        if (!(e >= 0.0) || !std::isfinite(e))
            throw ConfigError("Rician factors must be finite and nonnegative");
    if (!(delta >= 0.0) || !std::isfinite(delta))
        throw ConfigError("delta must be finite and nonnegative");
    if (!(split > 0.0 && split < 1.0))
        throw ConfigError("split must lie in (0, 1)");
    for (double dbm : {sigma_n2_dbm, sigma_v2_dbm, P_T_dbm, P_SW_dbm, P_DC_dbm})
        if (!std::isfinite(dbm))
            throw ConfigError("power levels must be finite dBm values");
    if (!(user_radius >= 0.0))
        throw ConfigError("user_radius must be nonnegative");
    if (user_side != 1 && user_side != -1)
        throw ConfigError("user_side must be +1 or -1");
    if (!(d_over_lambda > 0.0))
        throw ConfigError("d_over_lambda must be positive");
    if (trials < 1)
        throw ConfigError("trials must be at least 1");
}

} // namespace risrate
