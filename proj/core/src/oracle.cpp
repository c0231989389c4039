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

#include "risrate/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risrate
{

GammaEstimates estimate_gammas(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi,
                               const LinkBudget &budget, int trials, std::uint64_t seed)
{
    if (trials < 1000)
        throw std::invalid_argument("estimate_gammas: need at least 1000 trials");
    const int K = cfg.K;
    const ChannelSampler sampler(geom, cfg);
    const CVector phase = phi.diagonal();
    const double eta = budget.eta;

    // Column layout per trial: g1[K] g3[K] g4[K] g5[K] g2[K*K]
    const int width = 4 * K + K * K;
    const auto col = [trials](int c) { return static_cast<std::size_t>(c) * static_cast<std::size_t>(trials); };
    std::vector<double> samples(col(width));

#pragma omp parallel
    {
        ChannelRealization ch;
#pragma omp for schedule(static)
        for (int t = 0; t < trials; ++t)
        {
            Rng rng = make_stream(seed, Stream::Oracle, static_cast<std::uint64_t>(t));
            sampler.sample_into(rng, ch);
            const CMatrix H2phi = ch.H2 * phase.asDiagonal();
            const CMatrix G = eta * H2phi * ch.H1;
            const Eigen::MatrixXd G2 = G.cwiseAbs2();
            const Eigen::VectorXd row_power = G2.rowwise().sum();
            for (int k = 0; k < K; ++k)
            {
                const double n2 = G.col(k).squaredNorm();
                samples[col(k) + t] = n2 * n2;
                samples[col(K + k) + t] = (G.col(k).adjoint() * H2phi).squaredNorm();
                samples[col(2 * K + k) + t] = n2;
                const double pk = budget.p[static_cast<std::size_t>(k)];
                samples[col(3 * K + k) + t] =
                    G2.col(k).dot((pk * row_power.array() + budget.sigma_n2).matrix());
                for (int i = 0; i < K; ++i)
                    samples[col(4 * K + k * K + i) + t] = std::norm(G.col(k).dot(G.col(i)));
            }
        }
    }

    const std::span<const double> all(samples);
    const auto est = [&](int c) { return estimate_mean(all.subspan(col(c), static_cast<std::size_t>(trials))); };
    GammaEstimates out;
    out.users = K;
    for (int k = 0; k < K; ++k)
    {
        out.g1.push_back(est(k));
        out.g3.push_back(est(K + k));
        out.g4.push_back(est(2 * K + k));
        out.g5.push_back(est(3 * K + k));
    }
    for (int k = 0; k < K; ++k)
        for (int i = 0; i < K; ++i)
            out.g2.push_back(est(4 * K + k * K + i));
    return out;
}

WishartReport wishart_moment_check(const Geometry &geom, const SystemConfig &cfg, int trials, std::uint64_t seed)
{
    if (trials < 10000)
        throw std::invalid_argument("wishart_moment_check: need at least 10000 trials");
    const int M = cfg.M, N = cfg.N;
    const ChannelSampler sampler(geom, cfg);

    // Fixed chunking keeps the reduction order independent of the thread count.
    constexpr int chunks = 64;
    std::vector<CMatrix> sum(chunks, CMatrix::Zero(N, N));
    std::vector<Eigen::MatrixXd> sq_re(chunks, Eigen::MatrixXd::Zero(N, N));
    std::vector<Eigen::MatrixXd> sq_im(chunks, Eigen::MatrixXd::Zero(N, N));

#pragma omp parallel for schedule(static)
    for (int c = 0; c < chunks; ++c)
    {
        ChannelRealization ch;
        const int begin = static_cast<int>(static_cast<long long>(trials) * c / chunks);
        const int end = static_cast<int>(static_cast<long long>(trials) * (c + 1) / chunks);
        for (int t = begin; t < end; ++t)
        {
            Rng rng = make_stream(seed, Stream::Wishart, static_cast<std::uint64_t>(t));
            sampler.sample_into(rng, ch);
            const CMatrix W = ch.H2.adjoint() * ch.H2;
            const CMatrix WW = W * W;
            sum[c] += WW;
            sq_re[c] += WW.real().cwiseAbs2();
            sq_im[c] += WW.imag().cwiseAbs2();
        }
    }
    CMatrix mean = CMatrix::Zero(N, N);
    Eigen::MatrixXd m2_re = Eigen::MatrixXd::Zero(N, N), m2_im = Eigen::MatrixXd::Zero(N, N);
    for (int c = 0; c < chunks; ++c)
    {
        mean += sum[c];
        m2_re += sq_re[c];
        m2_im += sq_im[c];
    }
    const double T = trials;
    mean /= T;
    m2_re /= T;
    m2_im /= T;

    WishartReport r;
    r.trials = trials;
    r.monte_carlo = mean;
    r.std_err.resize(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
        {
            const double var_re = std::max(0.0, m2_re(i, j) - std::norm(mean(i, j).real())) * T / (T - 1.0);
            const double var_im = std::max(0.0, m2_im(i, j) - std::norm(mean(i, j).imag())) * T / (T - 1.0);
            r.std_err(i, j) = {std::sqrt(var_re / T), std::sqrt(var_im / T)};
        }

    const LosComponents los = los_components(geom, cfg);
    const double scale = geom.beta / (1.0 + cfg.delta);
    const CMatrix sigma_bar =
        scale * (CMatrix::Identity(N, N) + (cfg.delta / M) * (los.H2bar.adjoint() * los.H2bar));
    r.trace_sigma_bar = sigma_bar.trace().real();
    r.approximation = M * sigma_bar * (M * sigma_bar + r.trace_sigma_bar * CMatrix::Identity(N, N));

    r.frobenius_rel_deviation = (r.monte_carlo - r.approximation).norm() / r.approximation.norm();
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
        {
            const cdouble d = r.monte_carlo(i, j) - r.approximation(i, j);
            const cdouble se = r.std_err(i, j);
            if (se.real() > 0.0)
                r.max_abs_z = std::max(r.max_abs_z, std::abs(d.real()) / se.real());
            if (se.imag() > 0.0)
                r.max_abs_z = std::max(r.max_abs_z, std::abs(d.imag()) / se.imag());
        }
    return r;
}

double exact_gamma3(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi, std::size_t k,
                    double eta)
{
    if (k >= geom.users.size())
        throw std::out_of_range("exact_gamma3: user index out of range");
    const LosComponents los = los_components(geom, cfg);
    const Eigen::Index N = cfg.N;
    const double M = cfg.M;
    const double d = cfg.delta;
    const double e = cfg.epsilon.at(k);

    // Rows of the normalised RIS-BS matrix are CN(sqrt(d) a, I); the phase-rotated
    // user channel is CN(sqrt(e) Phi hbar_k, I).
    const CVector &a = los.a_ris_tx;
    const CMatrix R = CMatrix::Identity(N, N) + d * a * a.adjoint();
    const CVector mu = std::sqrt(e) * phi.diagonal().cwiseProduct(los.hbar.col(static_cast<Eigen::Index>(k)));
    const CMatrix C = CMatrix::Identity(N, N) + mu * mu.adjoint();

    const double same_row = (R.trace() * (C * R).trace()).real() + C.trace().real() +
                            2.0 * d * (a.adjoint() * C * a)(0, 0).real();
    const double moment = M * (M - 1.0) * (R * C * R).trace().real() + M * same_row;
    const double scale = geom.beta / (1.0 + d);
    return eta * eta * scale * scale * geom.alpha[k] / (1.0 + e) * moment;
}

} // namespace risrate
