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

#include <cmath>
#include <stdexcept>

namespace risrate
{

DeterministicStats compute_stats(const Geometry &geom, const LosComponents &los,
                                 const SystemConfig &cfg, const PhaseConfig &phi)
{
    if (phi.size() != static_cast<std::size_t>(cfg.N))
        throw std::invalid_argument("compute_stats: phase vector length differs from N");

    DeterministicStats s;
    s.M = cfg.M;
    s.N = cfg.N;
    s.delta = cfg.delta;
    s.beta = geom.beta;
    s.epsilon = cfg.epsilon;
    s.alpha = geom.alpha;

    const CVector steered = los.a_ris_tx.conjugate().cwiseProduct(phi.diagonal());
    s.f.resize(static_cast<std::size_t>(cfg.K));
    s.u.resize(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k)
    {
        const auto kk = static_cast<std::size_t>(k);
        s.f[kk] = (steered.array() * los.hbar.col(k).array()).sum(); // sum_n conj(a_n) e^{j theta_n} hbar_kn
        s.u[kk] = s.beta * s.alpha[kk] / ((s.delta + 1.0) * (s.epsilon[kk] + 1.0));
    }
    s.hbar_inner = los.hbar.adjoint() * los.hbar;
    return s;
}

DeterministicStats compute_stats(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi)
{
    return compute_stats(geom, los_components(geom, cfg), cfg, phi);
}

namespace
{

// LoS-weighted power delta eps_k |f_k|^2 + N (delta + eps_k + 1): the bracket
// of E||g_k||^2 and of the per-antenna moments.
double los_power(const DeterministicStats &s, std::size_t k)
{
    const double e = s.epsilon[k];
    return s.delta * e * std::norm(s.f[k]) + s.N * (s.delta + e + 1.0);
}

// Re of the phase-coupling term between users k and i.
double cross_term(const DeterministicStats &s, std::size_t k, std::size_t i, ClosedFormOptions opts)
{
    const cdouble inner = s.hbar_inner(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
    if (opts.printed_cross_conjugation)
        return std::real(std::conj(s.f[k]) * s.f[i] * inner);
    return std::real(s.f[k] * std::conj(s.f[i]) * inner);
}

double gamma5_impl(const DeterministicStats &s, std::size_t k, double eta, double pk, double sigma_n2,
                   ClosedFormOptions opts)
{
    const double M = s.M, N = s.N, d = s.delta;
    const double e = s.epsilon[k];
    const double F = std::norm(s.f[k]);
    const double eta2 = eta * eta;
    const double eta4 = eta2 * eta2;
    const double uk = s.u[k];

    // sum over antennas of E|g_km|^4
    const double dEF = d * e * F;
    const double fourth = dEF * dEF + 4.0 * dEF * (N * (d + e + 1.0) + 2.0) +
                          2.0 * N * N * (d + e + 1.0) * (d + e + 1.0) + 2.0 * N * (2.0 * d + 2.0 * e + 1.0);
    double total = pk * eta4 * M * uk * uk * fourth;

    total += eta2 * sigma_n2 * M * uk * los_power(s, k);

    // sum over antennas and other users of E|g_km|^2 |g_im|^2
    double pairs = 0.0;
    for (std::size_t i = 0; i < s.users(); ++i)
    {
        if (i == k)
            continue;
        const double ei = s.epsilon[i];
        const double Fi = std::norm(s.f[i]);
        const double ui = s.u[i];
        const double overlap = std::norm(s.hbar_inner(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)));
        // E|x_i^H x_k|^2 from the shared RIS-BS scattering row
        const double covariance = opts.printed_quantization_moment ? 0.0 : N * (1.0 + e + ei) + e * ei * overlap;
        pairs += uk * ui * (los_power(s, k) * los_power(s, i) + covariance) +
                 2.0 * d * uk * ui * (e * ei * cross_term(s, k, i, opts) + e * F + ei * Fi + N);
    }
    total += pk * eta4 * M * pairs;
    return total;
}

struct RateTerms
{
    double eta;
    double sigma_v2;
    double adc_alpha;
    bool dynamic_noise;
};

double rate_impl(const DeterministicStats &s, const LinkBudget &budget, std::size_t k, RateTerms t,
                 ClosedFormOptions opts)
{
    if (!budget.startup_met)
        return 0.0;
    if (k >= s.users() || budget.p.size() != s.users())
        throw std::out_of_range("analytic rate: user index or budget size out of range");

    const double pk = budget.p[k];
    const double signal = pk * gamma1(s, k, t.eta);
    if (signal == 0.0)
        return 0.0;

    double denom = 0.0;
    for (std::size_t i = 0; i < s.users(); ++i)
        if (i != k)
            denom += budget.p[i] * gamma2(s, k, i, t.eta, opts);
    if (t.dynamic_noise && t.sigma_v2 > 0.0)
        denom += t.eta * t.eta * t.sigma_v2 * gamma3(s, k, t.eta);
    denom += budget.sigma_n2 * gamma4(s, k, t.eta);
    if (t.adc_alpha < 1.0)
        denom += (1.0 - t.adc_alpha) / t.adc_alpha * gamma5_impl(s, k, t.eta, pk, budget.sigma_n2, opts);
    return std::log2(1.0 + signal / denom);
}

} // namespace

double gamma1(const DeterministicStats &s, std::size_t k, double eta)
{
    const double M = s.M, N = s.N, d = s.delta;
    const double e = s.epsilon[k];
    const double F = std::norm(s.f[k]);
    const double u = s.u[k];
    const double eta4 = eta * eta * eta * eta;

    const double braces =
        M * d * d * e * e * F * F +
        2.0 * d * e * F * (2.0 * M * N + M * N * e + M * N + 2.0 * M + N * e + N + 2.0) +
        M * N * N * (2.0 * d * d + e * e + 2.0 * d * e + 2.0 * d + 2.0 * e + 1.0) +
        N * N * (e * e + 2.0 * d * e + 2.0 * d + 2.0 * e + 1.0) + M * N * (2.0 * d + 2.0 * e + 1.0) +
        N * (2.0 * d + 2.0 * e + 1.0);
    return eta4 * M * u * u * braces;
}

double gamma2(const DeterministicStats &s, std::size_t k, std::size_t i, double eta, ClosedFormOptions opts)
{
    if (k == i)
        throw std::invalid_argument("gamma2: needs two distinct users");
    const double M = s.M, N = s.N, d = s.delta;
    const double ek = s.epsilon[k], ei = s.epsilon[i];
    const double Fk = std::norm(s.f[k]), Fi = std::norm(s.f[i]);
    const double eta4 = eta * eta * eta * eta;
    const double prefactor = opts.printed_pair_prefactor ? s.u[k] * s.u[k] * s.u[i] * s.u[i] : s.u[k] * s.u[i];
    const double hh = std::norm(s.hbar_inner(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)));

    const double braces = M * d * d * ek * ei * Fk * Fi + d * ek * Fk * (d * M * N + N * ei + N + 2.0 * M) +
                          d * ei * Fi * (d * M * N + N * ek + N + 2.0 * M) +
                          N * N * (M * d * d + d * (ek + ei + 2.0) + (ei + 1.0) * (ek + 1.0)) +
                          M * N * (2.0 * d + ek + ei + 1.0) + M * ek * ei * hh +
                          2.0 * M * d * ek * ei * cross_term(s, k, i, opts);
    return eta4 * M * prefactor * braces;
}

double gamma3(const DeterministicStats &s, std::size_t k, double eta)
{
    const double M = s.M, N = s.N, d = s.delta;
    const double e = s.epsilon[k];
    const double F = std::norm(s.f[k]);
    const double eta2 = eta * eta;
    const double bu = s.beta * s.u[k];
    return eta2 * M * M * bu / (d + 1.0) *
               (d * e * (2.0 + d * N) * F + 2.0 * N * d + N * N * d * d + N * e + N) +
           eta2 * M * N * bu * (d * e * F + N * d + N * e + N);
}

double gamma4(const DeterministicStats &s, std::size_t k, double eta)
{
    return eta * eta * s.M * s.u[k] * los_power(s, k);
}

double gamma5(const DeterministicStats &s, std::size_t k, const LinkBudget &budget, ClosedFormOptions opts)
{
    return gamma5_impl(s, k, budget.eta, budget.p.at(k), budget.sigma_n2, opts);
}

double rate_theorem1(const DeterministicStats &s, const LinkBudget &budget, std::size_t k, ClosedFormOptions opts)
{
    return rate_impl(s, budget, k, {budget.eta, budget.sigma_v2, budget.adc_alpha, true}, opts);
}

double rate_passive(const DeterministicStats &s, const LinkBudget &budget, std::size_t k, ClosedFormOptions opts)
{
    return rate_impl(s, budget, k, {1.0, 0.0, budget.adc_alpha, false}, opts);
}

double rate_ideal(const DeterministicStats &s, const LinkBudget &budget, std::size_t k, ClosedFormOptions opts)
{
    return rate_impl(s, budget, k, {budget.eta, budget.sigma_v2, 1.0, true}, opts);
}

double analytic_rate(const DeterministicStats &s, const LinkBudget &budget, std::size_t k, ClosedFormOptions opts)
{
    switch (budget.mode)
    {
    case Mode::Passive:
        return rate_passive(s, budget, k, opts);
    case Mode::IdealAdc:
        return rate_ideal(s, budget, k, opts);
    case Mode::Active:
        break;
    }
    return rate_theorem1(s, budget, k, opts);
}

double analytic_sum_rate(const DeterministicStats &s, const LinkBudget &budget, ClosedFormOptions opts)
{
    double sum = 0.0;
    for (std::size_t k = 0; k < s.users(); ++k)
        sum += analytic_rate(s, budget, k, opts);
    return sum;
}

} // namespace risrate
