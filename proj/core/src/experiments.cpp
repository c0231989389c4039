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

#include "risrate/experiments.hpp"

#include "risrate/analytic.hpp"
#include "risrate/budget.hpp"
#include "risrate/channel.hpp"
#include "risrate/oracle.hpp"
#include "risrate/transceiver.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

namespace risrate
{

using json = nlohmann::json;

ExperimentSettings::ExperimentSettings()
{
    for (int p = 0; p <= 40; p += 2)
        power_dbm.push_back(p);
}

const std::vector<std::string> &experiment_names()
{
    static const std::vector<std::string> names{"antennas-elements", "total-power", "adc-bits", "verify",
                                                "optimize"};
    return names;
}

std::string format_number(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

void CsvTable::write(std::ostream &os) const
{
    const auto line = [&os](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
            os << (i ? "," : "") << cells[i];
        os << '\n';
    };
    line(header);
    for (const auto &r : rows)
        line(r);
}

// ---------------------------------------------------------------- settings

namespace
{

void reject_unknown(const json &obj, std::initializer_list<const char *> known, const std::string &where)
{
    if (!obj.is_object())
        throw ConfigError("'" + where + "' must be an object");
    const std::set<std::string> allowed(known.begin(), known.end());
    for (const auto &item : obj.items())
        if (!allowed.count(item.key()))
            throw ConfigError("unknown key '" + where + "." + item.key() + "'");
}

Vec3 read_vec3(const json &j, const std::string &key)
{
    if (!j.is_array() || j.size() != 3)
        throw ConfigError("'" + key + "' must be an array of three numbers");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

template <typename T>
void read(const json &obj, const char *key, T &out)
{
    if (obj.contains(key))
        out = obj.at(key).get<T>();
}

void read_system(const json &j, SystemConfig &c)
{
    reject_unknown(j,
                   {"M", "N", "K", "adc_bits", "epsilon", "delta", "sigma_n2_dbm", "sigma_v2_dbm", "P_T_dbm",
                    "P_SW_dbm", "P_DC_dbm", "split", "pathloss_exp_user", "pathloss_exp_ris", "bs_pos",
                    "ris_pos", "user_center", "user_radius", "user_side", "d_over_lambda",
                    "restrict_elevation", "strict_aqnm", "trials", "seed"},
                   "system");
    read(j, "M", c.M);
    read(j, "N", c.N);
    read(j, "K", c.K);
    if (j.contains("adc_bits"))
    {
        const auto &b = j.at("adc_bits");
        if (b.is_string())
        {
            if (b.get<std::string>() != "ideal")
                throw ConfigError("adc_bits must be an integer or \"ideal\"");
            c.adc_bits.reset();
        }
        else
            c.adc_bits = b.get<int>();
    }
    if (j.contains("epsilon"))
    {
        const auto &e = j.at("epsilon");
        if (e.is_number())
            c.epsilon = {e.get<double>()};
        else
            c.epsilon = e.get<std::vector<double>>();
    }
    read(j, "delta", c.delta);
    read(j, "sigma_n2_dbm", c.sigma_n2_dbm);
    read(j, "sigma_v2_dbm", c.sigma_v2_dbm);
    read(j, "P_T_dbm", c.P_T_dbm);
    read(j, "P_SW_dbm", c.P_SW_dbm);
    read(j, "P_DC_dbm", c.P_DC_dbm);
    read(j, "split", c.split);
    read(j, "pathloss_exp_user", c.pathloss_exp_user);
    read(j, "pathloss_exp_ris", c.pathloss_exp_ris);
    if (j.contains("bs_pos"))
        c.bs_pos = read_vec3(j.at("bs_pos"), "bs_pos");
    if (j.contains("ris_pos"))
        c.ris_pos = read_vec3(j.at("ris_pos"), "ris_pos");
    if (j.contains("user_center"))
        c.user_center = read_vec3(j.at("user_center"), "user_center");
    read(j, "user_radius", c.user_radius);
    read(j, "user_side", c.user_side);
    read(j, "d_over_lambda", c.d_over_lambda);
    read(j, "restrict_elevation", c.restrict_elevation);
    read(j, "strict_aqnm", c.strict_aqnm);
    read(j, "trials", c.trials);
    read(j, "seed", c.seed);
}

void read_sweeps(const json &j, ExperimentSettings &s)
{
    reject_unknown(j, {"M", "N", "P_T_dbm", "power_N", "adc_bits", "adc_arrays", "modes", "optimize"}, "sweeps");
    read(j, "M", s.sweep_M);
    read(j, "N", s.sweep_N);
    read(j, "P_T_dbm", s.power_dbm);
    read(j, "power_N", s.power_N);
    read(j, "adc_bits", s.adc_bits);
    if (j.contains("adc_arrays"))
    {
        s.adc_arrays.clear();
        for (const auto &pair : j.at("adc_arrays"))
        {
            if (!pair.is_array() || pair.size() != 2)
                throw ConfigError("sweeps.adc_arrays entries must be [M, N] pairs");
            s.adc_arrays.emplace_back(pair[0].get<int>(), pair[1].get<int>());
        }
    }
    if (j.contains("modes"))
    {
        s.modes.clear();
        for (const auto &m : j.at("modes"))
            s.modes.push_back(mode_from_string(m.get<std::string>()));
    }
    read(j, "optimize", s.optimize);
}

void read_verify(const json &j, VerifySettings &v)
{
    reject_unknown(j, {"M", "N", "K", "gamma_trials", "power_trials", "wishart_trials"}, "verify");
    read(j, "M", v.M);
    read(j, "N", v.N);
    read(j, "K", v.K);
    read(j, "gamma_trials", v.gamma_trials);
    read(j, "power_trials", v.power_trials);
    read(j, "wishart_trials", v.wishart_trials);
}

void read_ga(const json &j, GAParams &g)
{
    reject_unknown(j,
                   {"population", "elites", "parents", "crossover_offspring", "mutation_offspring",
                    "mutation_sigma", "max_iterations", "min_mean_change", "window", "seed"},
                   "ga");
    read(j, "population", g.population);
    read(j, "elites", g.elites);
    read(j, "parents", g.parents);
    read(j, "crossover_offspring", g.crossover_offspring);
    read(j, "mutation_offspring", g.mutation_offspring);
    read(j, "mutation_sigma", g.mutation_sigma);
    read(j, "max_iterations", g.max_iterations);
    read(j, "min_mean_change", g.min_mean_change);
    read(j, "window", g.window);
    read(j, "seed", g.seed);
}

} // namespace

ExperimentSettings parse_settings(const std::string &json_text)
{
    ExperimentSettings s;
    try
    {
        const json doc = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
        reject_unknown(doc, {"system", "sweeps", "verify", "ga"}, "config");
        if (doc.contains("system"))
            read_system(doc.at("system"), s.system);
        if (doc.contains("sweeps"))
            read_sweeps(doc.at("sweeps"), s);
        if (doc.contains("verify"))
            read_verify(doc.at("verify"), s.verify);
        if (doc.contains("ga"))
            read_ga(doc.at("ga"), s.ga);
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    if (s.system.epsilon.size() == 1)
        s.system.broadcast_epsilon();
    s.system.validate();
    s.ga.validate();
    if (s.modes.empty())
        throw ConfigError("sweeps.modes must not be empty");
    return s;
}

ExperimentSettings load_settings(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_settings(text.str());
}

// ------------------------------------------------------------- experiments

namespace
{

std::string bits_label(const std::optional<int> &bits) { return bits ? std::to_string(*bits) : "ideal"; }

SystemConfig with_arrays(SystemConfig cfg, int M, int N)
{
    cfg.M = M;
    cfg.N = N;
    cfg.validate();
    return cfg;
}

PhaseConfig reference_phases(const SystemConfig &cfg)
{
    Rng rng = make_stream(cfg.seed, Stream::Phases);
    return PhaseConfig::random(cfg.N, rng);
}

struct RatePoint
{
    LinkBudget budget;
    double analytic = 0.0;
    RateReport mc;
};

RatePoint evaluate_point(const Geometry &geom, const SystemConfig &cfg, const PhaseConfig &phi, Mode mode)
{
    RatePoint pt;
    pt.budget = resolve_budget(cfg, geom.alpha, mode);
    pt.analytic = analytic_sum_rate(compute_stats(geom, cfg, phi), pt.budget);
    pt.mc = monte_carlo_rate(geom, cfg, phi, pt.budget);
    return pt;
}

ExperimentResult antennas_elements(const ExperimentSettings &s)
{
    CsvTable t{"antennas_elements.csv",
               {"M", "N", "mode", "b", "analytic_sum_rate", "mc_sum_rate", "mc_stderr", "optimized"},
               {}};
    const Geometry geom = make_geometry(s.system);
    for (int M : s.sweep_M)
        for (int N : s.sweep_N)
        {
            const SystemConfig cfg = with_arrays(s.system, M, N);
            const PhaseConfig phi = reference_phases(cfg);
            for (Mode mode : s.modes)
            {
                const auto b = mode == Mode::IdealAdc ? std::optional<int>{} : cfg.adc_bits;
                const RatePoint pt = evaluate_point(geom, cfg, phi, mode);
                t.rows.push_back({std::to_string(M), std::to_string(N), to_string(mode), bits_label(b),
                                  format_number(pt.analytic), format_number(pt.mc.sum_rate),
                                  format_number(pt.mc.sum_std_err), "false"});
                if (s.optimize && pt.budget.startup_met)
                {
                    const GAResult ga = optimize_phases(geom, cfg, pt.budget, s.ga);
                    const RatePoint opt = evaluate_point(geom, cfg, ga.best, mode);
                    t.rows.push_back({std::to_string(M), std::to_string(N), to_string(mode), bits_label(b),
                                      format_number(opt.analytic), format_number(opt.mc.sum_rate),
                                      format_number(opt.mc.sum_std_err), "true"});
                }
            }
        }
    return {{t}, true};
}

ExperimentResult total_power(const ExperimentSettings &s)
{
    CsvTable t{"total_power.csv",
               {"P_T_dbm", "N", "mode", "b", "startup_met", "eta", "analytic_sum_rate", "mc_sum_rate",
                "mc_stderr"},
               {}};
    SystemConfig base = with_arrays(s.system, s.system.M, s.power_N);
    const Geometry geom = make_geometry(base);
    const PhaseConfig phi = reference_phases(base);
    for (double p : s.power_dbm)
        for (Mode mode : s.modes)
        {
            SystemConfig cfg = base;
            cfg.P_T_dbm = p;
            const auto b = mode == Mode::IdealAdc ? std::optional<int>{} : cfg.adc_bits;
            const RatePoint pt = evaluate_point(geom, cfg, phi, mode);
            t.rows.push_back({format_number(p), std::to_string(cfg.N), to_string(mode), bits_label(b),
                              pt.budget.startup_met ? "true" : "false", format_number(pt.budget.eta),
                              format_number(pt.analytic), format_number(pt.mc.sum_rate),
                              format_number(pt.mc.sum_std_err)});
        }
    return {{t}, true};
}

ExperimentResult adc_bits(const ExperimentSettings &s)
{
    CsvTable t{"adc_bits.csv", {"b", "M", "N", "mode", "analytic_sum_rate", "mc_sum_rate", "mc_stderr"}, {}};
    const Geometry geom = make_geometry(s.system);
    for (const auto &[M, N] : s.adc_arrays)
    {
        SystemConfig cfg = with_arrays(s.system, M, N);
        const PhaseConfig phi = reference_phases(cfg);
        std::vector<std::optional<int>> levels(s.adc_bits.begin(), s.adc_bits.end());
        levels.push_back(std::nullopt);
        for (const auto &bits : levels)
            for (Mode mode : s.modes)
            {
                if (mode == Mode::IdealAdc && bits)
                    continue;
                cfg.adc_bits = bits;
                // an ideal ADC with an active surface is the IdealAdc mode
                const Mode eff = (!bits && mode == Mode::Active) ? Mode::IdealAdc : mode;
                if (!bits && mode == Mode::IdealAdc &&
                    std::find(s.modes.begin(), s.modes.end(), Mode::Active) != s.modes.end())
                    continue; // already emitted by the Active entry
                const RatePoint pt = evaluate_point(geom, cfg, phi, eff);
                t.rows.push_back({bits_label(bits), std::to_string(M), std::to_string(N), to_string(eff),
                                  format_number(pt.analytic), format_number(pt.mc.sum_rate),
                                  format_number(pt.mc.sum_std_err)});
            }
    }
    return {{t}, true};
}

struct CheckRow
{
    std::string check;
    int k = -1;
    int i = -1;
    double closed_form = 0.0;
    double estimate = 0.0;
    double std_err = 0.0;
    double tolerance = 0.0; ///< relative
    bool expect_pass = true;
};

ExperimentResult verify(const ExperimentSettings &s)
{
    CsvTable t{"verify.csv",
               {"check", "k", "i", "closed_form", "estimate", "std_err", "rel_dev", "tolerance", "expect",
                "status"},
               {}};
    bool ok = true;
    const auto emit = [&](const CheckRow &r) {
        const double dev = std::abs(r.estimate - r.closed_form);
        const double rel = r.closed_form != 0.0 ? dev / std::abs(r.closed_form) : dev;
        const bool within = rel <= r.tolerance;
        const bool pass = within == r.expect_pass;
        ok = ok && pass;
        t.rows.push_back({r.check, r.k >= 0 ? std::to_string(r.k) : "", r.i >= 0 ? std::to_string(r.i) : "",
                          format_number(r.closed_form), format_number(r.estimate), format_number(r.std_err),
                          format_number(rel), format_number(r.tolerance), r.expect_pass ? "match" : "mismatch",
                          pass ? "PASS" : "FAIL"});
    };
    // max(3 %, 4 standard errors), expressed relative to the closed form
    const auto stat_tol = [](double base, double closed, double se) {
        return std::max(base, 4.0 * se / std::abs(closed));
    };

    // Closed-form moments against brute force on a small instance.
    SystemConfig small = with_arrays(s.system, s.verify.M, s.verify.N);
    small.K = s.verify.K;
    small.broadcast_epsilon();
    small.validate();
    const Geometry geom = make_geometry(small);
    const PhaseConfig phi = reference_phases(small);
    const LinkBudget budget = resolve_budget(small, geom.alpha, Mode::Active);
    const DeterministicStats st = compute_stats(geom, small, phi);
    const GammaEstimates est = estimate_gammas(geom, small, phi, budget, s.verify.gamma_trials, small.seed);
    for (int k = 0; k < small.K; ++k)
    {
        const auto kk = static_cast<std::size_t>(k);
        const double g1 = gamma1(st, kk, budget.eta);
        emit({"gamma1", k, -1, g1, est.g1[kk].mean, est.g1[kk].std_err, stat_tol(0.03, g1, est.g1[kk].std_err)});
        const double g3 = gamma3(st, kk, budget.eta);
        emit({"gamma3", k, -1, g3, est.g3[kk].mean, est.g3[kk].std_err, 0.05});
        const double g3x = exact_gamma3(geom, small, phi, kk, budget.eta);
        emit({"gamma3_exact_wishart", k, -1, g3x, est.g3[kk].mean, est.g3[kk].std_err,
              stat_tol(0.03, g3x, est.g3[kk].std_err)});
        const double g4 = gamma4(st, kk, budget.eta);
        emit({"gamma4", k, -1, g4, est.g4[kk].mean, est.g4[kk].std_err, stat_tol(0.03, g4, est.g4[kk].std_err)});
        const double g5 = gamma5(st, kk, budget);
        emit({"gamma5", k, -1, g5, est.g5[kk].mean, est.g5[kk].std_err, stat_tol(0.03, g5, est.g5[kk].std_err)});
        for (int i = 0; i < small.K; ++i)
        {
            if (i == k)
                continue;
            const auto &e2 = est.pair(k, i);
            const double g2 = gamma2(st, kk, static_cast<std::size_t>(i), budget.eta);
            emit({"gamma2", k, i, g2, e2.mean, e2.std_err, stat_tol(0.03, g2, e2.std_err)});
            ClosedFormOptions printed;
            printed.printed_pair_prefactor = true;
            const double g2p = gamma2(st, kk, static_cast<std::size_t>(i), budget.eta, printed);
            emit({"gamma2_printed_prefactor", k, i, g2p, e2.mean, e2.std_err, stat_tol(0.03, g2p, e2.std_err),
                  false});
        }
    }

    // RIS output power identity at the configured system.
    {
        const SystemConfig &cfg = s.system;
        const Geometry g = make_geometry(cfg);
        const LinkBudget b = resolve_budget(cfg, g.alpha, Mode::Active);
        double sum_p_alpha = 0.0;
        for (std::size_t k = 0; k < b.p.size(); ++k)
            sum_p_alpha += b.p[k] * g.alpha[k];
        const double expected = b.eta * b.eta * cfg.N * (sum_p_alpha + b.sigma_v2);
        const Estimate m = measured_ris_power(g, cfg, reference_phases(cfg), b, s.verify.power_trials);
        emit({"ris_power", -1, -1, expected, m.mean, m.std_err, 0.01});
        emit({"ris_power_budget", -1, -1, b.P_A, expected, 0.0, 1e-12});
    }

    // Central-Wishart approximation of E{W W}, W = H2^H H2.
    for (double delta : {0.0, s.system.delta})
    {
        SystemConfig cfg = s.system;
        cfg.delta = delta;
        const Geometry g = make_geometry(cfg);
        const WishartReport w = wishart_moment_check(g, cfg, s.verify.wishart_trials, cfg.seed);
        const double approx_norm = w.approximation.norm();
        const double dev_norm = (w.monte_carlo - w.approximation).norm();
        CheckRow r{delta == 0.0 ? "wishart_central" : "wishart_noncentral",
                   -1,
                   -1,
                   approx_norm,
                   approx_norm + dev_norm,
                   w.std_err.norm(),
                   0.05};
        if (delta == 0.0)
            r.tolerance = std::max(0.01, 4.0 * w.std_err.norm() / approx_norm);
        emit(r);
        emit({"wishart_trace_sigma_bar", -1, -1, cfg.N * g.beta, w.trace_sigma_bar, 0.0, 1e-12});
    }
    return {{t}, ok};
}

ExperimentResult optimize(const ExperimentSettings &s)
{
    const SystemConfig &cfg = s.system;
    const Mode mode = s.modes.front();
    const Geometry geom = make_geometry(cfg);
    const LinkBudget budget = resolve_budget(cfg, geom.alpha, mode);
    const GAResult ga = optimize_phases(geom, cfg, budget, s.ga);

    CsvTable history{"ga_history.csv", {"generation", "best", "mean"}, {}};
    for (const auto &g : ga.history.generations)
        history.rows.push_back({std::to_string(g.generation), format_number(g.best), format_number(g.mean)});

    CsvTable phases{"ga_best_phases.csv", {"n", "theta"}, {}};
    for (std::size_t n = 0; n < ga.best.size(); ++n)
        phases.rows.push_back({std::to_string(n), format_number(ga.best.theta()[n])});

    CsvTable summary{"ga_summary.csv", {"phases", "mode", "analytic_sum_rate", "mc_sum_rate", "mc_stderr"}, {}};
    for (const auto &[label, phi] :
         std::vector<std::pair<std::string, PhaseConfig>>{{"reference_random", reference_phases(cfg)},
                                                          {"optimized", ga.best}})
    {
        const RatePoint pt = evaluate_point(geom, cfg, phi, mode);
        summary.rows.push_back({label, to_string(mode), format_number(pt.analytic), format_number(pt.mc.sum_rate),
                                format_number(pt.mc.sum_std_err)});
    }
    return {{history, phases, summary}, true};
}

} // namespace

ExperimentResult run_experiment(const std::string &name, const ExperimentSettings &settings)
{
    if (name == "antennas-elements")
        return antennas_elements(settings);
    if (name == "total-power")
        return total_power(settings);
    if (name == "adc-bits")
        return adc_bits(settings);
    if (name == "verify")
        return verify(settings);
    if (name == "optimize")
        return optimize(settings);
    throw ConfigError("unknown experiment '" + name + "'");
}

std::string run_manifest(const std::string &experiment, const ExperimentSettings &s)
{
    const SystemConfig &c = s.system;
    std::ostringstream os;
    const auto kv = [&os](const std::string &k, const std::string &v) { os << k << " = " << v << '\n'; };
    const auto vec = [](const Vec3 &v) {
        return "[" + format_number(v.x) + ", " + format_number(v.y) + ", " + format_number(v.z) + "]";
    };
    kv("experiment", experiment);
    kv("M", std::to_string(c.M));
    kv("N", std::to_string(c.N));
    kv("K", std::to_string(c.K));
    kv("adc_bits", bits_label(c.adc_bits));
    std::string eps;
    for (double e : c.epsilon)
        eps += (eps.empty() ? "" : ", ") + format_number(e);
    kv("epsilon", "[" + eps + "]");
    kv("delta", format_number(c.delta));
    kv("sigma_n2_dbm", format_number(c.sigma_n2_dbm));
    kv("sigma_v2_dbm", format_number(c.sigma_v2_dbm));
    kv("P_T_dbm", format_number(c.P_T_dbm));
    kv("P_SW_dbm", format_number(c.P_SW_dbm));
    kv("P_DC_dbm", format_number(c.P_DC_dbm));
    kv("split", format_number(c.split));
    kv("pathloss_exp_user", format_number(c.pathloss_exp_user));
    kv("pathloss_exp_ris", format_number(c.pathloss_exp_ris));
    kv("bs_pos", vec(c.bs_pos));
    kv("ris_pos", vec(c.ris_pos));
    kv("user_center", vec(c.user_center));
    kv("user_radius", format_number(c.user_radius));
    kv("user_side", std::to_string(c.user_side));
    kv("d_over_lambda", format_number(c.d_over_lambda));
    kv("restrict_elevation", c.restrict_elevation ? "true" : "false");
    kv("strict_aqnm", c.strict_aqnm ? "true" : "false");
    kv("trials", std::to_string(c.trials));
    kv("seed", std::to_string(c.seed));

    const Geometry geom = make_geometry(c);
    kv("beta", format_number(geom.beta));
    for (std::size_t k = 0; k < geom.alpha.size(); ++k)
        kv("alpha[" + std::to_string(k) + "]", format_number(geom.alpha[k]));
    for (Mode mode : {Mode::Active, Mode::Passive})
    {
        const std::string p = to_string(mode) + ".";
        kv(p + "startup_threshold_dbm", format_number(watts_to_dbm(startup_threshold(c, mode))));
        try
        {
            const LinkBudget b = resolve_budget(c, geom.alpha, mode);
            kv(p + "startup_met", b.startup_met ? "true" : "false");
            kv(p + "eta", format_number(b.eta));
            kv(p + "P_t_w", format_number(b.P_t));
            kv(p + "P_A_w", format_number(b.P_A));
            kv(p + "adc_alpha", format_number(b.adc_alpha));
        }
        catch (const ConfigError &e)
        {
            kv(p + "error", e.what());
        }
    }
    return os.str();
}

} // namespace risrate
