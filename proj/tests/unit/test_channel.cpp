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
#include "risrate/channel.hpp"
#include "risrate/rng.hpp"
#include "risrate/stats.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

namespace risrate
{
namespace
{

constexpr double pi = std::numbers::pi;

SystemConfig reference()
{
    SystemConfig cfg;
    cfg.broadcast_epsilon();
    return cfg;
}

void expect_vector(const CVector &v, std::initializer_list<cdouble> want)
{
    ASSERT_EQ(v.size(), static_cast<Eigen::Index>(want.size()));
    Eigen::Index i = 0;
    for (const cdouble &w : want)
    {
        EXPECT_NEAR(v(i).real(), w.real(), 1e-12) << "entry " << i;
        EXPECT_NEAR(v(i).imag(), w.imag(), 1e-12) << "entry " << i;
        ++i;
    }
}

TEST(ArrayResponse, SingleElementIsOne)
{
    expect_vector(array_response(1, 0.7, 2.1, 0.5), {1.0});
}

TEST(ArrayResponse, BroadsideElevationVariesAlongX)
{
    expect_vector(array_response(4, pi / 2, pi / 2, 0.5), {1.0, 1.0, -1.0, -1.0});
}

TEST(ArrayResponse, ZeroElevationVariesAlongY)
{
    expect_vector(array_response(4, 1.3, 0.0, 0.5), {1.0, -1.0, 1.0, -1.0});
}

TEST(ArrayResponse, UnitModulusEntries)
{
    const CVector a = array_response(64, 0.3, 1.1, 0.5);
    EXPECT_NEAR(a.squaredNorm(), 64.0, 1e-10);
    for (Eigen::Index i = 0; i < a.size(); ++i)
        EXPECT_NEAR(std::abs(a(i)), 1.0, 1e-14);
}

TEST(ArrayResponse, RejectsNonSquareCount)
{
    EXPECT_THROW(array_response(8, 0.0, 0.0, 0.5), std::domain_error);
    EXPECT_THROW(array_response(0, 0.0, 0.0, 0.5), std::domain_error);
}

TEST(ArrayResponse, RectangularMatchesSquareWhenSquare)
{
    const CVector a = array_response(36, 0.4, 2.2, 0.5);
    const CVector b = array_response(6, 6, 0.4, 2.2, 0.5);
    EXPECT_EQ(a, b);
}

TEST(PlanarLayout, NearSquareFactorization)
{
    EXPECT_EQ(planar_layout(16), std::make_pair(4, 4));
    EXPECT_EQ(planar_layout(8), std::make_pair(4, 2));
    EXPECT_EQ(planar_layout(128), std::make_pair(16, 8));
    EXPECT_EQ(planar_layout(7), std::make_pair(7, 1));
    EXPECT_THROW(planar_layout(0), std::domain_error);
}

TEST(Geometry, AnglesInRangeAndGainsFromDistances)
{
    const SystemConfig cfg = reference();
    const Geometry g = make_geometry(cfg);
    ASSERT_EQ(g.users.size(), 4u);
    for (std::size_t k = 0; k < g.users.size(); ++k)
    {
        const auto &a = g.user_to_ris[k];
        EXPECT_GE(a.az, 0.0);
        EXPECT_LT(a.az, 2 * pi);
        EXPECT_GE(a.el, 0.0);
        EXPECT_LT(a.el, 2 * pi);
        EXPECT_LE(std::hypot(g.users[k].x - cfg.user_center.x, g.users[k].y - cfg.user_center.y),
                  cfg.user_radius + 1e-12);
        EXPECT_GE(g.users[k].y, cfg.user_center.y);
        EXPECT_DOUBLE_EQ(g.alpha[k], path_loss(g.user_distance[k], cfg.pathloss_exp_user));
    }
    EXPECT_DOUBLE_EQ(g.beta, path_loss(g.ris_distance, cfg.pathloss_exp_ris));
}

TEST(Geometry, SeedReproducibleAndSizeIndependent)
{
    SystemConfig cfg = reference();
    const Geometry a = make_geometry(cfg);
    cfg.M = 144;
    cfg.N = 64;
    const Geometry b = make_geometry(cfg);
    EXPECT_EQ(a.alpha, b.alpha);
    EXPECT_EQ(a.ris_to_bs.az, b.ris_to_bs.az);
    cfg.seed = 2;
    EXPECT_NE(make_geometry(cfg).alpha, a.alpha);
}

TEST(LosComponents, Norms)
{
    const SystemConfig cfg = reference();
    const LosComponents los = los_components(make_geometry(cfg), cfg);
    for (int k = 0; k < cfg.K; ++k)
        EXPECT_NEAR(los.hbar.col(k).squaredNorm(), cfg.N, 1e-10);
    EXPECT_NEAR(los.H2bar.squaredNorm(), cfg.M * cfg.N, 1e-9);
    const CMatrix gram = los.H2bar.adjoint() * los.H2bar;
    const CMatrix rank_one = cfg.M * los.a_ris_tx * los.a_ris_tx.adjoint();
    EXPECT_LT((gram - rank_one).norm(), 1e-9);
    EXPECT_NEAR(gram.trace().real(), cfg.M * cfg.N, 1e-9);
}

TEST(ChannelSampler, LineOfSightLimit)
{
    SystemConfig cfg = reference();
    cfg.epsilon.assign(4, los_only_rician_factor);
    cfg.delta = los_only_rician_factor;
    const Geometry g = make_geometry(cfg);
    const ChannelSampler sampler(g, cfg);
    Rng rng = make_stream(cfg.seed, Stream::Fading, 0);
    const ChannelRealization ch = sampler.sample(rng);
    for (int k = 0; k < cfg.K; ++k)
    {
        const CVector want = std::sqrt(g.alpha[static_cast<std::size_t>(k)]) * sampler.los().hbar.col(k);
        EXPECT_LT((ch.H1.col(k) - want).norm() / want.norm(), 1e-5);
    }
    const CMatrix want2 = std::sqrt(g.beta) * sampler.los().H2bar;
    EXPECT_LT((ch.H2 - want2).norm() / want2.norm(), 1e-5);
}

TEST(ChannelSampler, SecondMoments)
{
    SystemConfig cfg = reference();
    cfg.M = 16;
    const Geometry g = make_geometry(cfg);
    const ChannelSampler sampler(g, cfg);
    constexpr int trials = 100000;
    std::vector<std::vector<double>> h(4, std::vector<double>(trials));
    std::vector<double> h2(trials);
    ChannelRealization ch;
    for (int t = 0; t < trials; ++t)
    {
        Rng rng = make_stream(cfg.seed, Stream::Fading, static_cast<std::uint64_t>(t));
        sampler.sample_into(rng, ch);
        for (int k = 0; k < 4; ++k)
            h[static_cast<std::size_t>(k)][static_cast<std::size_t>(t)] =
                ch.H1.col(k).squaredNorm() / (cfg.N * g.alpha[static_cast<std::size_t>(k)]);
        h2[static_cast<std::size_t>(t)] = ch.H2.squaredNorm() / (cfg.M * cfg.N * g.beta);
    }
    const double band = 4.0 / std::sqrt(trials * cfg.N) * 2.0;
    for (const auto &v : h)
        EXPECT_NEAR(estimate_mean(v).mean, 1.0, band);
    const Estimate e = estimate_mean(h2);
    EXPECT_NEAR(e.mean, 1.0, 3.0 * e.std_err);
}

TEST(ChannelSampler, DeterministicPerSeed)
{
    const SystemConfig cfg = reference();
    const ChannelSampler sampler(make_geometry(cfg), cfg);
    Rng a = make_stream(9, Stream::Fading, 4);
    Rng b = make_stream(9, Stream::Fading, 4);
    const ChannelRealization x = sampler.sample(a);
    const ChannelRealization y = sampler.sample(b);
    EXPECT_EQ(x.H1, y.H1);
    EXPECT_EQ(x.H2, y.H2);
    Rng c = make_stream(9, Stream::Fading, 5);
    EXPECT_NE(sampler.sample(c).H1, x.H1);
}

TEST(Rng, StreamsAreIndependentOfEachOther)
{
    Rng a = make_stream(1, Stream::Fading, 0);
    Rng b = make_stream(1, Stream::Oracle, 0);
    Rng c = make_stream(2, Stream::Fading, 0);
    const auto x = a();
    EXPECT_NE(x, b());
    EXPECT_NE(x, c());
}

TEST(ComplexNormal, UnitVariance)
{
    Rng rng = make_stream(3, Stream::Fading, 0);
    ComplexNormal cn;
    constexpr int n = 200000;
    CompensatedSum re, im, pw;
    for (int i = 0; i < n; ++i)
    {
        const cdouble z = cn(rng);
        re.add(z.real());
        im.add(z.imag());
        pw.add(std::norm(z));
    }
    EXPECT_NEAR(re.value() / n, 0.0, 0.01);
    EXPECT_NEAR(im.value() / n, 0.0, 0.01);
    EXPECT_NEAR(pw.value() / n, 1.0, 0.01);
}

} // namespace
} // namespace risrate
