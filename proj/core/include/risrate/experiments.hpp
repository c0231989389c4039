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

#ifndef RISRATE_EXPERIMENTS_HPP
#define RISRATE_EXPERIMENTS_HPP

#include "risrate/config.hpp"
#include "risrate/ga.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace risrate
{

struct VerifySettings
{
    int M = 8;
    int N = 4;
    int K = 2;
    int gamma_trials = 100000;
    int power_trials = 100000;
    int wishart_trials = 20000;
};

struct ExperimentSettings
{
    SystemConfig system;

    std::vector<int> sweep_M{16, 36, 64, 100, 144};
    std::vector<int> sweep_N{4, 16, 36, 64};

    std::vector<double> power_dbm; ///< defaults to 0, 2, ..., 40 dBm
    int power_N = 128;

    std::vector<int> adc_bits{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    std::vector<std::pair<int, int>> adc_arrays{{64, 16}, {64, 64}, {144, 64}};

    VerifySettings verify;
    GAParams ga;

    /// Modes to evaluate in sweeps (active and passive unless restricted).
    std::vector<Mode> modes{Mode::Active, Mode::Passive};
    bool optimize = false;

    ExperimentSettings();
};

/// Parse a JSON settings document. Top-level keys: "system", "sweeps",
/// "verify", "ga"; anything omitted keeps its default. Unknown keys are
/// rejected. Throws ConfigError with a diagnostic.
ExperimentSettings parse_settings(const std::string &json_text);
ExperimentSettings load_settings(const std::filesystem::path &path);

struct CsvTable
{
    std::string name; ///< file name, e.g. "total_power.csv"
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void write(std::ostream &os) const;
};

struct ExperimentResult
{
    std::vector<CsvTable> tables;
    bool all_checks_passed = true; ///< only meaningful for "verify"
};

/// Experiments: antennas-elements, total-power, adc-bits, verify, optimize.
/// Throws ConfigError for an unknown name.
ExperimentResult run_experiment(const std::string &name, const ExperimentSettings &settings);

const std::vector<std::string> &experiment_names();

/// Human-readable dump of the resolved configuration and its link budgets.
std::string run_manifest(const std::string &experiment, const ExperimentSettings &settings);

/// Fixed-precision number formatting used for every CSV cell.
std::string format_number(double x);

} // namespace risrate

#endif
