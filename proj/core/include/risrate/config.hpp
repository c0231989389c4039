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

#ifndef RISRATE_CONFIG_HPP
#define RISRATE_CONFIG_HPP

#include "risrate/common.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risrate
{

// Physical and experimental parameters. Defaults are the reference scenario:
// BS at (0,0,25), RIS at (5,100,30), users on a 5 m semicircle around
// (5,100,1.6), M=64, N=16, K=4, 1-bit ADCs, P_T=30 dBm.
struct SystemConfig
{
    int M = 64; ///< BS antennas; non-square counts use a near-square rectangular array
    int N = 16; ///< RIS elements; laid out like M
    int K = 4;  ///< single-antenna users

    /// ADC resolution in bits; std::nullopt means ideal (infinite) resolution.
    std::optional<int> adc_bits = 1;

    std::vector<double> epsilon = {10.0, 10.0, 10.0, 10.0}; ///< user-RIS Rician factors
    double delta = 1.0;                                      ///< RIS-BS Rician factor

    double sigma_n2_dbm = -90.0; ///< AWGN at the BS
    double sigma_v2_dbm = -70.0; ///< dynamic noise injected by the active RIS
    double P_T_dbm = 30.0;       ///< total network power
    double P_SW_dbm = -10.0;     ///< per-element switch/control power
    double P_DC_dbm = -5.0;      ///< per-element DC bias power (active only)

    /// Fraction of the post-circuit power given to user transmit power; the
    /// rest drives the RIS amplifiers.
    double split = 0.5;

    double pathloss_exp_user = 2.8;
    double pathloss_exp_ris = 2.8;

    Vec3 bs_pos{0.0, 0.0, 25.0};
    Vec3 ris_pos{5.0, 100.0, 30.0};
    Vec3 user_center{5.0, 100.0, 1.6};
    double user_radius = 5.0;
    /// +1 places the user semicircle at y >= center.y (away from the BS),
    /// -1 at y <= center.y.
    int user_side = 1;

    double d_over_lambda = 0.5;
    /// Draw elevation angles from [0, pi) instead of [0, 2pi).
    bool restrict_elevation = false;

    /// Use G diag(p) G^H and add the dynamic-noise term in the quantization
    /// noise covariance, instead of the closed-form-consistent p_k G G^H.
    bool strict_aqnm = false;

    int trials = 20000;
    std::uint64_t seed = 1;

    /// Throws ConfigError on the first violated invariant.
    void validate() const;

    /// Resize epsilon to K entries by repeating its last value.
    void broadcast_epsilon();
};

bool is_perfect_square(int n);
int integer_sqrt(int n);

} // namespace risrate

#endif
