// Copyright 2026 The bosonmon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BOSONMON_CONFIG_H
#define BOSONMON_CONFIG_H

#include <optional>
#include <string>
#include <vector>

#include "bosonmon/noise.h"
#include "bosonmon/protocols.h"
#include "json.hpp"

namespace bosonmon {

struct EnsembleParams {
    int realizations = 1000;
    int workers = 1;
};

struct AnalysisParams {
    double z = 1.0;
    double p_c = 0.3;
    std::vector<double> p_grid;  ///< empty: see ExperimentConfig::p_values
    std::vector<int> L_list;
    double t_over_L = 2.0;  ///< crossing time t = round(t_over_L * L)
    std::vector<std::string> inputs;
};

struct OutputParams {
    std::string dir = ".";
    std::string prefix = "bosonmon";
    bool records = false;
};

/// A parsed and validated experiment file. Top-level sections: circuit,
/// ensemble, noise, analysis, output; every section and key is optional.
struct ExperimentConfig {
    CircuitConfig circuit;
    std::optional<int> scramble_layers_per_L;
    std::optional<int> monitored_layers_per_L;
    bool p_given = false;
    EnsembleParams ensemble;
    noise::NoiseParams noise;
    unsigned channel_mask = noise::kAllChannels;
    AnalysisParams analysis;
    OutputParams output;
    nlohmann::json source;

    /// analysis.p_grid if set, else circuit.p if set, else 0, 0.05, .., 1.
    std::vector<double> p_values() const;
    /// analysis.L_list if set, else circuit.L.
    std::vector<int> sizes() const;
    /// The circuit at size L and rate p. When analysis.L_list is set every size takes
    /// Q = L/2 and depths from the *_per_L keys or the per-L defaults.
    CircuitConfig circuit_for(int modes, double p) const;
    /// Stable under key reordering: hash of the canonical (sorted-key) dump.
    std::string hash() const;
};

std::vector<double> default_p_grid();

/// Throws ConfigError naming the dotted key on unknown keys, type mismatches or
/// constraint violations.
ExperimentConfig parse_config(const nlohmann::json &j);

/// Reads and parses a file. Unreadable files and JSON syntax errors throw ConfigError with key "config".
ExperimentConfig load_config(const std::string &path);

}  // namespace bosonmon

#endif
