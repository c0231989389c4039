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

#ifndef RISRATE_COMMON_HPP
#define RISRATE_COMMON_HPP

#include <Eigen/Dense>

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risrate
{

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;

inline constexpr double two_pi = 2.0 * std::numbers::pi;

struct Vec3
{
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

inline double distance(const Vec3 &a, const Vec3 &b)
{
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// RIS operating mode. IdealAdc is the active RIS with infinite-resolution ADCs.
enum class Mode
{
    Active,
    Passive,
    IdealAdc
};

std::string to_string(Mode mode);
Mode mode_from_string(const std::string &name);

// Invalid or inconsistent configuration (bad dimensions, infeasible budget, ...).
class ConfigError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Reduce an angle to [0, 2pi).
inline double wrap_phase(double theta)
{
    double r = std::fmod(theta, two_pi);
    if (r < 0.0)
        r += two_pi;
    if (r >= two_pi) // fmod of a tiny negative can round up to 2pi
        r = 0.0;
    return r;
}

} // namespace risrate

#endif
