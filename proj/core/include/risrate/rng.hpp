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

#ifndef RISRATE_RNG_HPP
#define RISRATE_RNG_HPP

#include "risrate/common.hpp"

#include <cstdint>
#include <random>

namespace risrate
{

using Rng = std::mt19937_64;

// Independent purposes draw from disjoint stream families so that, e.g.,
// changing the trial count never perturbs the geometry.
enum class Stream : std::uint64_t
{
    Geometry = 1,
    Fading = 2,
    Oracle = 3,
    Genetic = 4,
    RisPower = 5,
    Phases = 6,
    Wishart = 7,
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Generator keyed by (seed, stream, index). Trial i of a Monte Carlo run uses
// index i, so results do not depend on thread count or scheduling.
inline Rng make_stream(std::uint64_t seed, Stream stream, std::uint64_t index = 0)
{
    std::uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ static_cast<std::uint64_t>(stream));
    key = splitmix64(key ^ index);
    std::seed_seq seq{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)};
    return Rng(seq);
}

// Circularly-symmetric standard complex Gaussian CN(0, 1).
class ComplexNormal
{
public:
    cdouble operator()(Rng &rng)
    {
        const double re = dist_(rng);
        const double im = dist_(rng);
        return {re, im};
    }

    void fill(Rng &rng, CMatrix &m)
    {
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            for (Eigen::Index i = 0; i < m.rows(); ++i)
                m(i, j) = (*this)(rng);
    }

private:
    std::normal_distribution<double> dist_{0.0, std::sqrt(0.5)};
};

} // namespace risrate

#endif
