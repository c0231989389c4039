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

#include <cmath>
#include <stdexcept>

namespace risrate
{

CVector array_response(int L, double az, double el, double d_over_lambda)
{
    if (L < 1 || !is_perfect_square(L))
        throw std::domain_error("array_response: L = " + std::to_string(L) + " is not a perfect square");
    const int side = integer_sqrt(L);
    return array_response(side, side, az, el, d_over_lambda);
}

CVector array_response(int rows, int cols, double az, double el, double d_over_lambda)
{
    if (rows < 1 || cols < 1)
        throw std::domain_error("array_response: array dimensions must be positive");
    const double kx = two_pi * d_over_lambda * std::sin(el) * std::sin(az);
    const double ky = two_pi * d_over_lambda * std::cos(el);
    const int L = rows * cols;
    CVector a(L);
    for (int l = 0; l < L; ++l)
    {
        const int x = l / cols;
        const int y = l % cols;
        a(l) = std::polar(1.0, kx * x + ky * y);
    }
    return a;
}

std::pair<int, int> planar_layout(int L)
{
    if (L < 1)
        throw std::domain_error("planar_layout: L must be positive");
    int cols = integer_sqrt(L);
    while (L % cols != 0)
        --cols;
    return {L / cols, cols};
}

Geometry make_geometry(const SystemConfig &cfg)
{
    Rng rng = make_stream(cfg.seed, Stream::Geometry);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double el_span = cfg.restrict_elevation ? std::numbers::pi : two_pi;

    Geometry g;
    g.users.reserve(static_cast<std::size_t>(cfg.K));
    for (int k = 0; k < cfg.K; ++k)
    {
        // sqrt for uniform density over the half-disc area
        const double r = cfg.user_radius * std::sqrt(unit(rng));
        const double t = std::numbers::pi * unit(rng);
        g.users.push_back({cfg.user_center.x + r * std::cos(t),
                           cfg.user_center.y + cfg.user_side * r * std::sin(t), cfg.user_center.z});
    }
    for (int k = 0; k < cfg.K; ++k)
    {
        const double az = two_pi * unit(rng);
        const double el = el_span * unit(rng);
        g.user_to_ris.push_back({az, el});
    }
    g.ris_to_bs.az = two_pi * unit(rng);
    g.ris_to_bs.el = el_span * unit(rng);
    g.bs_from_ris.az = two_pi * unit(rng);
    g.bs_from_ris.el = el_span * unit(rng);

    for (const Vec3 &u : g.users)
    {
        const double l = distance(u, cfg.ris_pos);
        g.user_distance.push_back(l);
        g.alpha.push_back(path_loss(l, cfg.pathloss_exp_user));
    }
    g.ris_distance = distance(cfg.ris_pos, cfg.bs_pos);
    g.beta = path_loss(g.ris_distance, cfg.pathloss_exp_ris);
    return g;
}

LosComponents los_components(const Geometry &geom, const SystemConfig &cfg)
{
    LosComponents los;
    const auto [ris_rows, ris_cols] = planar_layout(cfg.N);
    los.hbar.resize(cfg.N, cfg.K);
    for (int k = 0; k < cfg.K; ++k)
    {
        const auto &ang = geom.user_to_ris.at(static_cast<std::size_t>(k));
        los.hbar.col(k) = array_response(ris_rows, ris_cols, ang.az, ang.el, cfg.d_over_lambda);
    }
    los.a_ris_tx = array_response(ris_rows, ris_cols, geom.ris_to_bs.az, geom.ris_to_bs.el, cfg.d_over_lambda);
    const auto [rows, cols] = planar_layout(cfg.M);
    los.a_bs = array_response(rows, cols, geom.bs_from_ris.az, geom.bs_from_ris.el, cfg.d_over_lambda);
    los.H2bar = los.a_bs * los.a_ris_tx.adjoint();
    return los;
}

namespace
{

struct RicianSplit
{
    double los;
    double nlos;
};

RicianSplit rician_split(double factor)
{
    if (factor >= los_only_rician_factor)
        return {1.0, 0.0};
    return {std::sqrt(factor / (factor + 1.0)), std::sqrt(1.0 / (factor + 1.0))};
}

} // namespace

ChannelSampler::ChannelSampler(const Geometry &geom, const SystemConfig &cfg)
    : M_(cfg.M), N_(cfg.N), K_(cfg.K), los_(los_components(geom, cfg))
{
    if (geom.alpha.size() != static_cast<std::size_t>(K_) || cfg.epsilon.size() != static_cast<std::size_t>(K_))
        throw ConfigError("ChannelSampler: geometry/config user counts disagree");

    h1_mean_.resize(N_, K_);
    h1_scatter_scale_.resize(static_cast<std::size_t>(K_));
    for (int k = 0; k < K_; ++k)
    {
        const auto split = rician_split(cfg.epsilon[static_cast<std::size_t>(k)]);
        const double a = std::sqrt(geom.alpha[static_cast<std::size_t>(k)]);
        h1_mean_.col(k) = a * split.los * los_.hbar.col(k);
        h1_scatter_scale_[static_cast<std::size_t>(k)] = a * split.nlos;
    }
    const auto split = rician_split(cfg.delta);
    const double b = std::sqrt(geom.beta);
    h2_mean_ = b * split.los * los_.H2bar;
    h2_scatter_scale_ = b * split.nlos;
}

void ChannelSampler::sample_h1(Rng &rng, CMatrix &H1) const
{
    ComplexNormal cn;
    H1.resize(N_, K_);
    cn.fill(rng, H1);
    for (int k = 0; k < K_; ++k)
        H1.col(k) = h1_mean_.col(k) + h1_scatter_scale_[static_cast<std::size_t>(k)] * H1.col(k);
}

void ChannelSampler::sample_into(Rng &rng, ChannelRealization &out) const
{
    sample_h1(rng, out.H1);
    ComplexNormal cn;
    out.H2.resize(M_, N_);
    cn.fill(rng, out.H2);
    out.H2 = h2_mean_ + h2_scatter_scale_ * out.H2;
}

ChannelRealization ChannelSampler::sample(Rng &rng) const
{
    ChannelRealization r;
    sample_into(rng, r);
    return r;
}

} // namespace risrate
