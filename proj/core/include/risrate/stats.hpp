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

#ifndef RISRATE_STATS_HPP
#define RISRATE_STATS_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace risrate
{

// Neumaier-compensated running sum.
class CompensatedSum
{
public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

struct Estimate
{
    double mean = 0.0;
    double std_err = 0.0;
    std::size_t samples = 0;
};

// Sample mean and standard error of the mean. Samples are consumed in order,
// so the result is reproducible for a given sample vector.
inline Estimate estimate_mean(std::span<const double> samples)
{
    Estimate e;
    e.samples = samples.size();
    if (samples.empty())
        return e;
    CompensatedSum s;
    for (double x : samples)
        s.add(x);
    e.mean = s.value() / static_cast<double>(samples.size());
    if (samples.size() > 1)
    {
        CompensatedSum ss;
        for (double x : samples)
            ss.add((x - e.mean) * (x - e.mean));
        const double var = ss.value() / static_cast<double>(samples.size() - 1);
        e.std_err = std::sqrt(var / static_cast<double>(samples.size()));
    }
    return e;
}

} // namespace risrate

#endif
