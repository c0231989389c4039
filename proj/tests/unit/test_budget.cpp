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
#include "risrate/config.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

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

TEST(DbmConversion, KnownValues)
{
    EXPECT_NEAR(dbm_to_watts(30.0), 1.0, 1e-15);
    EXPECT_NEAR(dbm_to_watts(0.0), 1e-3, 1e-18);
    EXPECT_NEAR(dbm_to_watts(-90.0), 1e-12, 1e-27);
}

TEST(DbmConversion, RoundTrip)
{
    for (double x : {-120.0, -33.3, 0.0, 17.27, 46.0})
        EXPECT_NEAR(watts_to_dbm(dbm_to_watts(x)), x, 1e-12);
}

TEST(PathLoss, KnownValues)
{
    EXPECT_NEAR(path_loss(100.0, 2.8), std::pow(10.0, -8.6), 1e-20);
    EXPECT_NEAR(path_loss(1.0, 2.8), 1e-3, 1e-18);
    EXPECT_NEAR(path_loss(5.0, 2.8), std::pow(10.0, -3.0 - 2.8 * std::log10(5.0)), 1e-20);
    EXPECT_NEAR(path_loss(5.0, 2.8), 1.10e-5, 1e-7);
}

TEST(PathLoss, RejectsNonPositiveDistance)
{
    EXPECT_THROW(path_loss(0.0, 2.8), std::domain_error);
    EXPECT_THROW(path_loss(-1.0, 2.8), std::domain_error);
}

TEST(Startup, ActiveThresholdAtSixteenElements)
{
    const SystemConfig cfg = reference();
    EXPECT_NEAR(startup_threshold(cfg, Mode::Active), 16.0 * (1e-4 + dbm_to_watts(-5.0)), 1e-15);
    EXPECT_NEAR(watts_to_dbm(startup_threshold(cfg, Mode::Active)), 8.23, 0.01);
    EXPECT_NEAR(startup_threshold(cfg, Mode::Passive), 16.0 * 1e-4, 1e-15);
}

TEST(Startup, BelowThresholdGivesZeroPower)
{
    SystemConfig cfg = reference();
    cfg.P_T_dbm = 5.0;
    const std::vector<double> alpha(4, 1e-5);
    const LinkBudget b = resolve_budget(cfg, alpha, Mode::Active);
    EXPECT_FALSE(b.startup_met);
    for (double p : b.p)
        EXPECT_EQ(p, 0.0);
    EXPECT_TRUE(resolve_budget(cfg, alpha, Mode::Passive).startup_met);
}

TEST(AmplificationGain, InvertsRisPower)
{
    const double eta = amplification_gain(0.5, 16, 5.0e-6, 1.0e-10);
    EXPECT_NEAR(eta * eta, 0.5 / (16.0 * 5.0001e-6), 1e-9);
    EXPECT_NEAR(eta * eta, 6249.875, 1e-3);
}

TEST(ResolveBudget, ActiveConservesPower)
{
    const SystemConfig cfg = reference();
    const std::vector<double> alpha{1e-5, 2e-5, 3e-5, 4e-5};
    const LinkBudget b = resolve_budget(cfg, alpha, Mode::Active);
    ASSERT_TRUE(b.startup_met);
    const double P_T = dbm_to_watts(cfg.P_T_dbm);
    EXPECT_NEAR((b.P_t + b.P_A + b.circuit_power) / P_T, 1.0, 1e-12);
    EXPECT_NEAR(b.P_t, b.P_A, 1e-15);
    EXPECT_GE(b.eta, 1.0);
    double sum_p_alpha = 0.0;
    for (std::size_t k = 0; k < alpha.size(); ++k)
    {
        EXPECT_DOUBLE_EQ(b.p[k], b.P_t / 4.0);
        sum_p_alpha += b.p[k] * alpha[k];
    }
    EXPECT_NEAR(b.eta * b.eta * cfg.N * (sum_p_alpha + b.sigma_v2) / b.P_A, 1.0, 1e-12);
}

TEST(ResolveBudget, PassiveConservesPower)
{
    const SystemConfig cfg = reference();
    const std::vector<double> alpha(4, 1e-5);
    const LinkBudget b = resolve_budget(cfg, alpha, Mode::Passive);
    EXPECT_NEAR((b.P_t + b.circuit_power) / dbm_to_watts(cfg.P_T_dbm), 1.0, 1e-12);
    EXPECT_EQ(b.eta, 1.0);
    EXPECT_EQ(b.sigma_v2, 0.0);
    EXPECT_EQ(b.P_A, 0.0);
}

TEST(ResolveBudget, EtaGrowsWithTotalPower)
{
    SystemConfig cfg = reference();
    const std::vector<double> alpha(4, 1e-5);
    double prev = 0.0;
    for (double p = 10.0; p <= 40.0; p += 2.0)
    {
        cfg.P_T_dbm = p;
        const LinkBudget b = resolve_budget(cfg, alpha, Mode::Active);
        EXPECT_GT(b.P_t, 0.0);
        EXPECT_GE(b.eta, prev);
        prev = b.eta;
    }
}

TEST(ResolveBudget, RejectsSubunityGain)
{
    const SystemConfig cfg = reference();
    const std::vector<double> huge(4, 10.0);
    EXPECT_THROW(resolve_budget(cfg, huge, Mode::Active), ConfigError);
}

TEST(ResolveBudget, IdealAdcHasUnitGain)
{
    const SystemConfig cfg = reference();
    const std::vector<double> alpha(4, 1e-5);
    EXPECT_EQ(resolve_budget(cfg, alpha, Mode::IdealAdc).adc_alpha, 1.0);
    EXPECT_NEAR(resolve_budget(cfg, alpha, Mode::Active).adc_alpha, 0.6366, 1e-12);
}

TEST(SystemConfig, ValidateRejectsBadFields)
{
    const auto fails = [](auto mutate) {
        SystemConfig cfg;
        cfg.broadcast_epsilon();
        mutate(cfg);
        EXPECT_THROW(cfg.validate(), ConfigError);
    };
    fails([](SystemConfig &c) { c.K = 0; });
    fails([](SystemConfig &c) { c.M = 0; });
    fails([](SystemConfig &c) { c.N = -4; });
    fails([](SystemConfig &c) { c.split = 1.0; });
    fails([](SystemConfig &c) { c.split = 0.0; });
    fails([](SystemConfig &c) { c.delta = -1.0; });
    fails([](SystemConfig &c) { c.epsilon[2] = -0.5; });
    fails([](SystemConfig &c) { c.epsilon.pop_back(); });
    fails([](SystemConfig &c) { c.adc_bits = 0; });
}

TEST(SystemConfig, BroadcastEpsilonRepeatsLastValue)
{
    SystemConfig cfg;
    cfg.K = 6;
    cfg.epsilon = {1.0, 2.0};
    cfg.broadcast_epsilon();
    EXPECT_EQ(cfg.epsilon, (std::vector<double>{1.0, 2.0, 2.0, 2.0, 2.0, 2.0}));
    cfg.validate();
}

} // namespace
} // namespace risrate
