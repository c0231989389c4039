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

#include "risrate/transceiver.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace risrate
{

double aqnm_alpha(std::optional<int> bits)
{
    if (!bits)
        return 1.0;
    const int b = *bits;
    if (b <= 0)
        throw std::domain_error("aqnm_alpha: bits must be positive");
    static constexpr std::array<double, 5> rho_table{0.3634, 0.1175, 0.03454, 0.009479, 0.002499};
    if (b <= 5)
        return 1.0 - rho_table[static_cast<std::size_t>(b - 1)];
    const double rho = std::numbers::pi * std::sqrt(3.0) / 2.0 * std::pow(2.0, -2.0 * b);
    return 1.0 - rho;
}

PhaseConfig::PhaseConfig(std::vector<double> theta) : theta_(std::move(theta))
{
    for (double &t : theta_)
        t = wrap_phase(t);
}

PhaseConfig PhaseConfig::random(int N, Rng &rng)
{
    std::uniform_real_distribution<double> unit(0.0, two_pi);
    std::vector<double> theta(static_cast<std::size_t>(N));
    for (double &t : theta)
        t = unit(rng);
    return PhaseConfig(std::move(theta));
}

CVector PhaseConfig::diagonal() const
{
    CVector d(static_cast<Eigen::Index>(theta_.size()));
    for (std::size_t n = 0; n < theta_.size(); ++n)
        d(static_cast<Eigen::Index>(n)) = std::polar(1.0, theta_[n]);
    return d;
}

CMatrix cascaded_channel(const ChannelRealization &ch, const PhaseConfig &phi, double eta)
{
    const auto N = static_cast<Eigen::Index>(phi.size());
    if (ch.H2.cols() != N || ch.H1.rows() != N)
        throw std::invalid_argument("cascaded_channel: H2 is " + std::to_string(ch.H2.rows()) + "x" +
                                    std::to_string(ch.H2.cols()) + ", H1 is " +
                                    std::to_string(ch.H1.rows()) + "x" + std::to_string(ch.H1.cols()) +
                                    ", phases " + std::to_string(N));
    return eta * (ch.H2 * phi.diagonal().asDiagonal() * ch.H1);
}

std::vector<double> instantaneous_sinr(const ChannelRealization &ch, const PhaseConfig &phi,
                                       const LinkBudget &budget, ReceiverOptions opts)
{
    const auto K = ch.H1.cols();
    std::vector<double> sinr(static_cast<std::size_t>(K), 0.0);
    if (!budget.startup_met)
        return sinr;
    if (budget.p.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("instantaneous_sinr: budget has wrong number of users");

    const double a = budget.adc_alpha;
    const double eta = budget.eta;
    const CMatrix H2phi = ch.H2 * phi.diagonal().asDiagonal();
    const CMatrix G = eta * (H2phi * ch.H1);
    const CMatrix gram = G.adjoint() * G;
    const Eigen::MatrixXd G_abs2 = G.cwiseAbs2();

    Eigen::VectorXd dyn_rows; // ||row m of H2 Phi||^2, strict AQNM only
    Eigen::VectorXd rx_power; // diag(G P G^H), strict AQNM only
    if (opts.strict_aqnm)
    {
        dyn_rows = H2phi.cwiseAbs2().rowwise().sum();
        rx_power = Eigen::VectorXd::Zero(G.rows());
        for (Eigen::Index i = 0; i < K; ++i)
            rx_power += budget.p[static_cast<std::size_t>(i)] * G_abs2.col(i);
    }
    const Eigen::VectorXd all_users = G_abs2.rowwise().sum();

    for (Eigen::Index k = 0; k < K; ++k)
    {
        const double pk = budget.p[static_cast<std::size_t>(k)];
        const double norm2 = gram(k, k).real();
        const double signal = pk * a * a * norm2 * norm2;

        double interference = 0.0;
        for (Eigen::Index i = 0; i < K; ++i)
            if (i != k)
                interference += budget.p[static_cast<std::size_t>(i)] * std::norm(gram(k, i));
        interference *= a * a;

        double dynamic = 0.0;
        if (budget.sigma_v2 > 0.0)
            dynamic = eta * eta * a * a * budget.sigma_v2 * (G.col(k).adjoint() * H2phi).squaredNorm();

        const double awgn = a * a * budget.sigma_n2 * norm2;

        double quant = 0.0;
        if (a < 1.0)
        {
            const auto gk2 = G_abs2.col(k);
            if (opts.strict_aqnm)
            {
                const Eigen::VectorXd cov = rx_power.array() +
                                            eta * eta * budget.sigma_v2 * dyn_rows.array() +
                                            budget.sigma_n2;
                quant = gk2.dot(cov);
            }
            else
            {
                quant = gk2.dot((pk * all_users.array() + budget.sigma_n2).matrix());
            }
            quant *= a * (1.0 - a);
        }

        const double denom = interference + dynamic + awgn + quant;
        sinr[static_cast<std::size_t>(k)] = denom > 0.0 ? signal / denom : 0.0;
    }
    return sinr;
}

int worker_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

RateReport monte_carlo_rate(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi,
                            const LinkBudget &budget)
{
    const int K = cfg.K;
    const int trials = cfg.trials;
    RateReport report;
    report.startup_met = budget.startup_met;
    report.trials_used = trials;
    report.per_user_rate.assign(static_cast<std::size_t>(K), 0.0);
    report.std_err.assign(static_cast<std::size_t>(K), 0.0);
    if (!budget.startup_met)
        return report;

    const ChannelSampler sampler(geom, cfg);
    const ReceiverOptions opts{cfg.strict_aqnm};
    // trials x K, then one extra column block for the per-trial sum
    std::vector<double> samples(static_cast<std::size_t>(trials) * static_cast<std::size_t>(K + 1));

#pragma omp parallel
    {
        ChannelRealization ch;
#pragma omp for schedule(static)
        for (int t = 0; t < trials; ++t)
        {
            Rng rng = make_stream(cfg.seed, Stream::Fading, static_cast<std::uint64_t>(t));
            sampler.sample_into(rng, ch);
            const auto sinr = instantaneous_sinr(ch, phi, budget, opts);
            double total = 0.0;
            for (int k = 0; k < K; ++k)
            {
                const double r = std::log2(1.0 + sinr[static_cast<std::size_t>(k)]);
                samples[static_cast<std::size_t>(k) * trials + t] = r;
                total += r;
            }
            samples[static_cast<std::size_t>(K) * trials + t] = total;
        }
    }

    const std::span<const double> all(samples);
    for (int k = 0; k < K; ++k)
    {
        const auto e = estimate_mean(all.subspan(static_cast<std::size_t>(k) * trials, trials));
        report.per_user_rate[static_cast<std::size_t>(k)] = e.mean;
        report.std_err[static_cast<std::size_t>(k)] = e.std_err;
    }
    CompensatedSum sum;
    for (double r : report.per_user_rate)
        sum.add(r);
    report.sum_rate = sum.value();
    report.sum_std_err = estimate_mean(all.subspan(static_cast<std::size_t>(K) * trials, trials)).std_err;
    return report;
}

Estimate measured_ris_power(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi,
                            const LinkBudget &budget, int trials)
{
    if (trials < 1)
        throw std::invalid_argument("measured_ris_power: trials must be positive");
    const ChannelSampler sampler(geom, cfg);
    const CVector phase = phi.diagonal();
    const double noise_scale = std::sqrt(budget.sigma_v2);
    Eigen::VectorXd sqrt_p(cfg.K);
    for (int k = 0; k < cfg.K; ++k)
        sqrt_p(k) = std::sqrt(budget.p[static_cast<std::size_t>(k)]);

    std::vector<double> samples(static_cast<std::size_t>(trials));
#pragma omp parallel
    {
        CMatrix H1;
        CMatrix x(cfg.K, 1);
        CMatrix v(cfg.N, 1);
#pragma omp for schedule(static)
        for (int t = 0; t < trials; ++t)
        {
            Rng rng = make_stream(cfg.seed, Stream::RisPower, static_cast<std::uint64_t>(t));
            sampler.sample_h1(rng, H1);
            ComplexNormal cn;
            cn.fill(rng, x);
            cn.fill(rng, v);
            const CVector y = budget.eta * phase.cwiseProduct(H1 * (sqrt_p.cast<cdouble>().cwiseProduct(x.col(0))) +
                                                              noise_scale * v.col(0));
            samples[static_cast<std::size_t>(t)] = y.squaredNorm();
        }
    }
    return estimate_mean(samples);
}

} // namespace risrate
