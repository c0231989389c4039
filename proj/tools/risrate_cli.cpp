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

// risrate: run link-level sweeps and verification reports.
//
//   risrate --config configs/reference.json --experiment total-power --output out/
//
// RISRATE_TRIALS and RISRATE_SEED override the config file; the --trials and
// --seed flags override both.

#include "risrate/experiments.hpp"
#include "risrate/transceiver.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace
{

template <typename T>
std::optional<T> env_override(const char *name)
{
    const char *raw = std::getenv(name);
    if (!raw || !*raw)
        return std::nullopt;
    try
    {
        if constexpr (std::is_same_v<T, int>)
            return std::stoi(raw);
        else
            return static_cast<T>(std::stoull(raw));
    }
    catch (const std::exception &)
    {
        throw risrate::ConfigError(std::string("environment variable ") + name + " is not a valid integer");
    }
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Active-RIS massive MIMO uplink rate simulator"};

    std::string config_path;
    std::string experiment;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::string output_dir = ".";
    std::optional<std::string> mode;
    bool optimize = false;

    app.add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
    app.add_option("--experiment", experiment, "antennas-elements | total-power | adc-bits | verify | optimize")
        ->required()
        ->check(CLI::IsMember(risrate::experiment_names()));
    app.add_option("--trials", trials, "Monte Carlo trials per point");
    app.add_option("--seed", seed, "master seed");
    app.add_option("--output", output_dir, "directory for CSV files and the run manifest");
    app.add_option("--mode", mode, "restrict to one RIS mode")->check(CLI::IsMember({"active", "passive", "ideal"}));
    app.add_flag("--optimize", optimize, "add GA-optimized phase rows (antennas-elements)");

    CLI11_PARSE(app, argc, argv);

    try
    {
        risrate::ExperimentSettings settings = risrate::load_settings(config_path);
        if (auto t = env_override<int>("RISRATE_TRIALS"))
            settings.system.trials = *t;
        if (auto s = env_override<std::uint64_t>("RISRATE_SEED"))
            settings.system.seed = *s;
        if (trials)
            settings.system.trials = *trials;
        if (seed)
            settings.system.seed = *seed;
        if (mode)
            settings.modes = {risrate::mode_from_string(*mode)};
        settings.optimize = settings.optimize || optimize;
        settings.system.validate();

        const std::filesystem::path out(output_dir);
        std::filesystem::create_directories(out);

        const auto start = std::chrono::steady_clock::now();
        const risrate::ExperimentResult result = risrate::run_experiment(experiment, settings);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        for (const auto &table : result.tables)
        {
            std::ofstream f(out / table.name);
            if (!f)
                throw std::runtime_error("cannot write " + (out / table.name).string());
            table.write(f);
            std::cout << "wrote " << (out / table.name).string() << " (" << table.rows.size() << " rows)\n";
        }
        {
            std::ofstream f(out / "manifest.txt");
            f << risrate::run_manifest(experiment, settings);
        }
        std::cerr << experiment << " finished in " << seconds << " s on " << risrate::worker_threads()
                  << " thread(s)\n";

        if (experiment == "verify")
        {
            std::cout << (result.all_checks_passed ? "verify: all checks PASS" : "verify: some checks FAIL") << '\n';
            return result.all_checks_passed ? 0 : 3;
        }
        return 0;
    }
    catch (const risrate::ConfigError &e)
    {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 2;
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
