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

#include "risrate/analytic.hpp"
#include "risrate/budget.hpp"
#include "risrate/channel.hpp"
#include "risrate/transceiver.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace risrate
{
namespace
{

SystemConfig reference()
{
    SystemConfig cfg;
    cfg.broadcast_epsilon();
    return cfg;
}

struct Fixture : ::testing::Test
{
    SystemConfig cfg = reference();
    Geometry geom = make_geometry(cfg);
    LosComponents los = los_components(geom, cfg);
    PhaseConfig phi = random_phi(0);
    LinkBudget budget = resolve_budget(cfg, geom.alpha, Mode::Active);

    PhaseConfig random_phi(std::uint64_t index) const
    {
        Rng rng = make_stream(cfg.seed, Stream::Phases, index);
        return PhaseConfig::random(cfg.N, rng);
    }
    DeterministicStats stats(const PhaseConfig &p) const { return compute_stats(geom, los, cfg, p); }
};

// Rayleigh everywhere with unit gains: every Rician term drops out.
DeterministicStats rayleigh(int M, int N)
{
    DeterministicStats s;
    s.M = M;
    s.N = N;
    s.delta = 0.0;
    s.beta = 1.0;
    s.epsilon = {0.0, 0.0};
    s.alpha = {1.0, 1.0};
    s.f = {0.0, 0.0};
    s.u = {1.0, 1.0};
    s.hbar_inner = CMatrix::Constant(2, 2, cdouble(N, 0.0));
    return s;
}

// E|g_k^H g_i|^2 written as traces of the per-hop covariances.
double gamma2_by_traces(const DeterministicStats &s, const LosComponents &los, const PhaseConfig &phi,
                        std::size_t k, std::size_t i, double eta)
{
    const Eigen::Index N = s.N;
    const CVector d = phi.diagonal();
    const auto cov = [&](std::size_t j) {
        const CVector mu = std::sqrt(s.epsilon[j]) * d.cwiseProduct(los.hbar.col(static_cast<Eigen::Index>(j)));
        return CMatrix(CMatrix::Identity(N, N) + mu * mu.adjoint());
    };
    const CMatrix Ck = cov(k), Ci = cov(i);
    const CVector &a = los.a_ris_tx;
    const CMatrix R = CMatrix::Identity(N, N) + s.delta * a * a.adjoint();
    const double M = s.M;
    const double inner = M * (M - 1.0) * (Ci * R * Ck * R).trace().real() +
                         M * ((Ci * R).trace() * (Ck * R).trace()).real() + M * (Ci * Ck).trace().real() +
                         M * s.delta * (a.adjoint() * (Ci * Ck + Ck * Ci) * a)(0, 0).real();
    return std::pow(eta, 4) * s.u[k] * s.u[i] * inner;
}

TEST(DegenerateMoments, RayleighFourthMoment)
{
    const DeterministicStats s = rayleigh(2, 2);
    EXPECT_DOUBLE_EQ(gamma1(s, 0, 1.0), 36.0);
    const DeterministicStats t = rayleigh(5, 9);
    EXPECT_DOUBLE_EQ(gamma1(t, 1, 1.0), 5.0 * 6.0 * 9.0 * 10.0);
}

TEST(DegenerateMoments, RayleighSecondMoment)
{
    EXPECT_DOUBLE_EQ(gamma4(rayleigh(2, 2), 0, 1.0), 4.0);
    EXPECT_DOUBLE_EQ(gamma4(rayleigh(7, 3), 1, 1.0), 21.0);
}

TEST_F(Fixture, PhaseCouplingBoundedAndAligned)
{
    for (std::uint64_t d = 0; d < 200; ++d)
        for (const cdouble &f : stats(random_phi(d)).f)
            EXPECT_LE(std::abs(f), cfg.N + 1e-12);

    std::vector<double> theta(static_cast<std::size_t>(cfg.N));
    for (int n = 0; n < cfg.N; ++n)
        theta[static_cast<std::size_t>(n)] = std::arg(los.a_ris_tx(n)) - std::arg(los.hbar(n, 2));
    EXPECT_NEAR(std::abs(stats(PhaseConfig(theta)).f[2]), cfg.N, 1e-12);
}

TEST_F(Fixture, IdentityPhaseWithMatchedAngles)
{
    Geometry g = geom;
    g.user_to_ris[1] = g.ris_to_bs;
    const DeterministicStats s = compute_stats(g, cfg, PhaseConfig::zeros(cfg.N));
    EXPECT_NEAR(s.f[1].real(), cfg.N, 1e-12);
    EXPECT_NEAR(s.f[1].imag(), 0.0, 1e-12);
}

TEST_F(Fixture, StatsInvariants)
{
    const DeterministicStats s = stats(phi);
    for (std::size_t k = 0; k < s.users(); ++k)
    {
        EXPECT_GT(s.u[k], 0.0);
        EXPECT_DOUBLE_EQ(s.u[k], s.beta * s.alpha[k] / ((s.delta + 1.0) * (s.epsilon[k] + 1.0)));
        const auto kk = static_cast<Eigen::Index>(k);
        EXPECT_NEAR(s.hbar_inner(kk, kk).real(), cfg.N, 1e-12);
        EXPECT_NEAR(s.hbar_inner(kk, kk).imag(), 0.0, 1e-12);
    }
}

TEST_F(Fixture, PairwiseMomentMatchesTraceForm)
{
    for (std::uint64_t d = 0; d < 5; ++d)
    {
        const PhaseConfig p = random_phi(d);
        const DeterministicStats s = stats(p);
        for (std::size_t k = 0; k < s.users(); ++k)
            for (std::size_t i = 0; i < s.users(); ++i)
                if (i != k)
                    EXPECT_NEAR(gamma2(s, k, i, budget.eta) / gamma2_by_traces(s, los, p, k, i, budget.eta), 1.0,
                                1e-10);
    }
}

TEST_F(Fixture, PrintedConjugationDisagreesWithTraceForm)
{
    ClosedFormOptions printed;
    printed.printed_cross_conjugation = true;
    const DeterministicStats s = stats(phi);
    double worst = 0.0;
    for (std::size_t k = 0; k < s.users(); ++k)
        for (std::size_t i = 0; i < s.users(); ++i)
            if (i != k)
                worst = std::max(worst, std::abs(gamma2(s, k, i, 1.0, printed) /
                                                     gamma2_by_traces(s, los, phi, k, i, 1.0) -
                                                 1.0));
    EXPECT_GT(worst, 1e-6);
}

TEST_F(Fixture, PairwiseMomentSymmetric)
{
    const DeterministicStats s = stats(phi);
    for (std::size_t k = 0; k < s.users(); ++k)
        for (std::size_t i = k + 1; i < s.users(); ++i)
            EXPECT_NEAR(gamma2(s, k, i, budget.eta) / gamma2(s, i, k, budget.eta), 1.0, 1e-13);
    EXPECT_THROW(gamma2(s, 1, 1, 1.0), std::invalid_argument);
}

TEST_F(Fixture, QuantizationMomentCovarianceTerm)
{
    ClosedFormOptions printed;
    printed.printed_quantization_moment = true;
    const DeterministicStats s = stats(phi);
    const double eta4 = std::pow(budget.eta, 4);
    for (std::size_t k = 0; k < s.users(); ++k)
    {
        double extra = 0.0;
        for (std::size_t i = 0; i < s.users(); ++i)
            if (i != k)
                extra += s.u[k] * s.u[i] *
                         (s.N * (1.0 + s.epsilon[k] + s.epsilon[i]) +
                          s.epsilon[k] * s.epsilon[i] *
                              std::norm(s.hbar_inner(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i))));
        extra *= budget.p[k] * eta4 * s.M;
        EXPECT_NEAR((gamma5(s, k, budget) - gamma5(s, k, budget, printed)) / extra, 1.0, 1e-9);
    }
}

TEST_F(Fixture, GlobalPhaseInvariance)
{
    std::vector<double> shifted = phi.theta();
    for (double &t : shifted)
        t += 0.77;
    const DeterministicStats a = stats(phi), b = stats(PhaseConfig(shifted));
    const double eta = budget.eta;
    for (std::size_t k = 0; k < a.users(); ++k)
    {
        EXPECT_NEAR(gamma1(b, k, eta) / gamma1(a, k, eta), 1.0, 1e-10);
        EXPECT_NEAR(gamma3(b, k, eta) / gamma3(a, k, eta), 1.0, 1e-10);
        EXPECT_NEAR(gamma4(b, k, eta) / gamma4(a, k, eta), 1.0, 1e-10);
        EXPECT_NEAR(gamma5(b, k, budget) / gamma5(a, k, budget), 1.0, 1e-10);
        for (std::size_t i = 0; i < a.users(); ++i)
            if (i != k)
                EXPECT_NEAR(gamma2(b, k, i, eta) / gamma2(a, k, i, eta), 1.0, 1e-10);
    }
    EXPECT_NEAR(analytic_sum_rate(b, budget) / analytic_sum_rate(a, budget), 1.0, 1e-10);
}

TEST_F(Fixture, MomentsScaleWithAmplification)
{
    const DeterministicStats s = stats(phi);
    EXPECT_NEAR(gamma1(s, 0, 6.0) / gamma1(s, 0, 3.0), 16.0, 1e-10);
    EXPECT_NEAR(gamma2(s, 0, 1, 6.0) / gamma2(s, 0, 1, 3.0), 16.0, 1e-10);
    EXPECT_NEAR(gamma3(s, 0, 6.0) / gamma3(s, 0, 3.0), 4.0, 1e-10);
    EXPECT_NEAR(gamma4(s, 0, 6.0) / gamma4(s, 0, 3.0), 4.0, 1e-10);
}

TEST_F(Fixture, PassiveIsActiveFormulaWithUnitGainAndNoDynamicNoise)
{
    const DeterministicStats s = stats(phi);
    const LinkBudget passive = resolve_budget(cfg, geom.alpha, Mode::Passive);
    LinkBudget as_active = passive;
    as_active.eta = 1.0;
    as_active.sigma_v2 = 0.0;
    for (std::size_t k = 0; k < s.users(); ++k)
        EXPECT_NEAR(rate_passive(s, passive, k) / rate_theorem1(s, as_active, k), 1.0, 1e-12);
}

TEST_F(Fixture, UnitAdcGainRemovesQuantizationTerm)
{
    const DeterministicStats s = stats(phi);
    LinkBudget b = budget;
    b.adc_alpha = 1.0;
    for (std::size_t k = 0; k < s.users(); ++k)
        EXPECT_DOUBLE_EQ(rate_theorem1(s, b, k), rate_ideal(s, budget, k));
}

TEST_F(Fixture, VanishingPowerGivesVanishingRate)
{
    const DeterministicStats s = stats(phi);
    LinkBudget b = budget;
    for (double &p : b.p)
        p = 1e-30;
    for (std::size_t k = 0; k < s.users(); ++k)
        EXPECT_LT(rate_theorem1(s, b, k), 1e-9);
}

TEST_F(Fixture, RateConvergesWithAdcResolution)
{
    const DeterministicStats s = stats(phi);
    SystemConfig ideal_cfg = cfg;
    ideal_cfg.adc_bits = std::nullopt;
    const LinkBudget ideal = resolve_budget(ideal_cfg, geom.alpha, Mode::Active);
    std::vector<double> prev(s.users(), 0.0);
    for (int bits = 1; bits <= 12; ++bits)
    {
        SystemConfig c = cfg;
        c.adc_bits = bits;
        const LinkBudget b = resolve_budget(c, geom.alpha, Mode::Active);
        for (std::size_t k = 0; k < s.users(); ++k)
        {
            const double r = rate_theorem1(s, b, k);
            const double top = rate_ideal(s, ideal, k);
            EXPECT_GE(r, prev[k]);
            EXPECT_LE(r, top);
            if (bits == 12)
                EXPECT_NEAR(r, top, 1e-3);
            if (bits == 4)
                EXPECT_LE(top - r, 0.05 * top);
            prev[k] = r;
        }
    }
}

TEST_F(Fixture, DispatchFollowsMode)
{
    const DeterministicStats s = stats(phi);
    const LinkBudget passive = resolve_budget(cfg, geom.alpha, Mode::Passive);
    const LinkBudget ideal = resolve_budget(cfg, geom.alpha, Mode::IdealAdc);
    EXPECT_EQ(analytic_rate(s, budget, 0), rate_theorem1(s, budget, 0));
    EXPECT_EQ(analytic_rate(s, passive, 0), rate_passive(s, passive, 0));
    EXPECT_EQ(analytic_rate(s, ideal, 0), rate_ideal(s, ideal, 0));
}

TEST(StartupRegion, PassiveWinsBetweenThresholds)
{
    SystemConfig cfg = reference();
    cfg.N = 128;
    cfg.P_T_dbm = 14.0;
    const Geometry g = make_geometry(cfg);
    const DeterministicStats s = compute_stats(g, cfg, PhaseConfig::zeros(cfg.N));
    const double active = analytic_sum_rate(s, resolve_budget(cfg, g.alpha, Mode::Active));
    const double passive = analytic_sum_rate(s, resolve_budget(cfg, g.alpha, Mode::Passive));
    EXPECT_EQ(active, 0.0);
    EXPECT_GT(passive, active);
}

TEST(StartupRegion, ActiveWinsWithAmplePower)
{
    SystemConfig cfg = reference();
    cfg.N = 128;
    const Geometry g = make_geometry(cfg);
    const DeterministicStats s = compute_stats(g, cfg, PhaseConfig::zeros(cfg.N));
    EXPECT_GT(analytic_sum_rate(s, resolve_budget(cfg, g.alpha, Mode::Active)),
              analytic_sum_rate(s, resolve_budget(cfg, g.alpha, Mode::Passive)));
}

} // namespace
} // namespace risrate
