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

#ifndef RISRATE_CHANNEL_HPP
#define RISRATE_CHANNEL_HPP

#include "risrate/common.hpp"
#include "risrate/config.hpp"
#include "risrate/rng.hpp"

#include <utility>
#include <vector>

namespace risrate
{

/// Steering vector of a sqrt(L) x sqrt(L) uniform planar array. Element l
/// (0-based) sits at x = l / sqrt(L), y = l mod sqrt(L) and has phase
/// 2 pi d/lambda (x sin(el) sin(az) + y cos(el)). Throws std::domain_error if
/// L is not a perfect square.
CVector array_response(int L, double az, double el, double d_over_lambda);

/// Rectangular rows x cols planar array, element l at x = l / cols,
/// y = l mod cols. Reduces to the square array when rows == cols.
CVector array_response(int rows, int cols, double az, double el, double d_over_lambda);

/// Near-square {rows, cols} factorization of L with cols the largest divisor
/// not above sqrt(L). Perfect squares give the square array.
std::pair<int, int> planar_layout(int L);

struct AngleOfArrival
{
    double az = 0.0;
    double el = 0.0;
};

/// Fixed large-scale geometry of one experiment. Angles and positions depend
/// only on the seed, not on M or N, so sweeps over array sizes share them.
struct Geometry
{
    std::vector<Vec3> users;
    std::vector<AngleOfArrival> user_to_ris; ///< per-user AoA at the RIS
    AngleOfArrival ris_to_bs;                ///< AoD at the RIS towards the BS
    AngleOfArrival bs_from_ris;              ///< AoA at the BS

    std::vector<double> user_distance; ///< l_k
    double ris_distance = 0.0;         ///< l_r
    std::vector<double> alpha;         ///< user-RIS large-scale gain
    double beta = 0.0;                 ///< RIS-BS large-scale gain
};

/// Draw user positions (uniform over the semicircle area) and all angles from
/// the Geometry stream of cfg.seed.
Geometry make_geometry(const SystemConfig &cfg);

/// Line-of-sight parts of both hops.
struct LosComponents
{
    CMatrix hbar;     ///< N x K, column k = a_N(user k AoA)
    CVector a_ris_tx; ///< a_N(RIS AoD)
    CVector a_bs;     ///< a_M(BS AoA)
    CMatrix H2bar;    ///< M x N, a_bs a_ris_tx^H
};

LosComponents los_components(const Geometry &geom, const SystemConfig &cfg);

/// One fading draw: H1 is N x K (user -> RIS), H2 is M x N (RIS -> BS).
struct ChannelRealization
{
    CMatrix H1;
    CMatrix H2;
};

/// Rician channel generator with the deterministic parts precomputed. Each
/// draw consumes H1's NLoS entries column-major, then H2's.
class ChannelSampler
{
public:
    ChannelSampler(const Geometry &geom, const SystemConfig &cfg);

    ChannelRealization sample(Rng &rng) const;
    void sample_into(Rng &rng, ChannelRealization &out) const;
    /// Only the user -> RIS hop.
    void sample_h1(Rng &rng, CMatrix &H1) const;

    const LosComponents &los() const { return los_; }
    int M() const { return M_; }
    int N() const { return N_; }
    int K() const { return K_; }

private:
    int M_, N_, K_;
    LosComponents los_;
    CMatrix h1_mean_;                      // sqrt(alpha_k eps_k/(eps_k+1)) hbar_k
    std::vector<double> h1_scatter_scale_; // sqrt(alpha_k/(eps_k+1))
    CMatrix h2_mean_;                      // sqrt(beta delta/(delta+1)) H2bar
    double h2_scatter_scale_;              // sqrt(beta/(delta+1))
};

/// Rician factors at or above this are treated as pure line of sight.
inline constexpr double los_only_rician_factor = 1e12;

} // namespace risrate

#endif
