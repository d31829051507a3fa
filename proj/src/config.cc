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

#include "bosonmon/config.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>

#include "bosonmon/errors.h"
#include "bosonmon/io.h"

namespace bosonmon {

namespace {

using nlohmann::json;

/// A JSON object together with its dotted path, for error messages.
class Section {
   public:
    Section(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_.empty() ? "config" : path_, "must be a JSON object");
        }
    }

    void allow(std::initializer_list<const char *> keys) const {
        for (const auto &item : j_.items()) {
            bool known = std::any_of(keys.begin(), keys.end(), [&](const char *k) { return item.key() == k; });
            if (!known) {
                throw ConfigError(key(item.key()), "unknown key");
            }
        }
    }

    bool has(const char *name) const {
        return j_.contains(name);
    }

    std::string key(const std::string &name) const {
        return path_.empty() ? name : path_ + "." + name;
    }

    Section sub(const char *name) const {
        return Section(j_.at(name), key(name));
    }

    bool read(const char *name, double &out) const {
        if (!has(name)) {
            return false;
        }
        const json &v = j_.at(name);
        if (!v.is_number()) {
            throw ConfigError(key(name), "expected a number");
        }
        out = v.get<double>();
        if (!std::isfinite(out)) {
            throw ConfigError(key(name), "must be finite");
        }
        return true;
    }

    bool read(const char *name, int &out) const {
        if (!has(name)) {
            return false;
        }
        const json &v = j_.at(name);
        if (!v.is_number_integer()) {
            throw ConfigError(key(name), "expected an integer");
        }
        long long x = v.get<long long>();
        if (x < -1'000'000'000LL || x > 1'000'000'000LL) {
            throw ConfigError(key(name), "integer out of range");
        }
        out = static_cast<int>(x);
        return true;
    }

    bool read(const char *name, std::uint64_t &out) const {
        if (!has(name)) {
            return false;
        }
        const json &v = j_.at(name);
        if (!v.is_number_unsigned()) {
            throw ConfigError(key(name), "expected a non-negative integer");
        }
        out = v.get<std::uint64_t>();
        return true;
    }

    bool read(const char *name, bool &out) const {
        if (!has(name)) {
            return false;
        }
        const json &v = j_.at(name);
        if (!v.is_boolean()) {
            throw ConfigError(key(name), "expected true or false");
        }
        out = v.get<bool>();
        return true;
    }

    bool read(const char *name, std::string &out) const {
        if (!has(name)) {
            return false;
        }
        const json &v = j_.at(name);
        if (!v.is_string()) {
            throw ConfigError(key(name), "expected a string");
        }
        out = v.get<std::string>();
        return true;
    }

    template <typename T>
    bool read(const char *name, std::vector<T> &out) const {
        if (!has(name)) {
            return false;
        }
        const json &v = j_.at(name);
        if (!v.is_array()) {
            throw ConfigError(key(name), "expected an array");
        }
        out.clear();
        for (const auto &e : v) {
            bool ok;
            if constexpr (std::is_same_v<T, int>) {
                ok = e.is_number_integer();
            } else if constexpr (std::is_same_v<T, double>) {
                ok = e.is_number();
            } else {
                ok = e.is_string();
            }
            if (!ok) {
                throw ConfigError(key(name), "array has an element of the wrong type");
            }
            out.push_back(e.get<T>());
        }
        return true;
    }

   private:
    const json &j_;
    std::string path_;
};

template <typename Enum>
Enum choose(const Section &s, const char *name, const std::string &value, std::initializer_list<std::pair<const char *, Enum>> options) {
    std::string allowed;
    for (const auto &[label, e] : options) {
        if (value == label) {
            return e;
        }
        allowed += allowed.empty() ? "" : ", ";
        allowed += label;
    }
    throw ConfigError(s.key(name), "must be one of " + allowed + "; got \"" + value + "\"");
}

void parse_circuit(const Section &s, ExperimentConfig &cfg) {
    s.allow({"L", "Q", "p", "U", "gate_mode", "with_snap", "snap_placement", "scramble_layers", "monitored_layers",
             "scramble_layers_per_L", "monitored_layers_per_L", "scramble_with_snap", "scramble_U", "measurement", "init", "seed",
             "entropy_base", "track_bipartite", "bipartite_base", "ancilla_side", "cut"});
    std::string text;
    InitKind init = InitKind::HaarPair;
    if (s.read("init", text)) {
        init = choose<InitKind>(s, "init", text, {{"haar_pair", InitKind::HaarPair}, {"checkerboard", InitKind::Checkerboard}});
    }
    int modes = 8;
    s.read("L", modes);
    if (modes < 2 || modes > 64) {
        throw ConfigError(s.key("L"), "must lie in [2, 64]");
    }
    CircuitConfig c = CircuitConfig::defaults(modes, init);
    s.read("Q", c.photons);
    cfg.p_given = s.read("p", c.p);
    s.read("U", c.strength);
    if (s.read("gate_mode", text)) {
        c.gate_mode = choose<GateMode>(s, "gate_mode", text, {{"BSFP", GateMode::BSFP}, {"BSRP", GateMode::BSRP}});
    }
    s.read("with_snap", c.with_snap);
    if (s.read("snap_placement", text)) {
        c.placement = choose<SnapPlacement>(s, "snap_placement", text, {{"brick", SnapPlacement::Brick}, {"all_modes", SnapPlacement::AllModes}});
    }
    int per_l = 0;
    if (s.read("scramble_layers_per_L", per_l)) {
        if (per_l < 0) {
            throw ConfigError(s.key("scramble_layers_per_L"), "must be non-negative");
        }
        cfg.scramble_layers_per_L = per_l;
        c.scramble_layers = per_l * modes;
    }
    if (s.read("monitored_layers_per_L", per_l)) {
        if (per_l < 0) {
            throw ConfigError(s.key("monitored_layers_per_L"), "must be non-negative");
        }
        cfg.monitored_layers_per_L = per_l;
        c.monitored_layers = per_l * modes;
    }
    s.read("scramble_layers", c.scramble_layers);
    s.read("monitored_layers", c.monitored_layers);
    s.read("scramble_with_snap", c.scramble_with_snap);
    s.read("scramble_U", c.scramble_strength);
    if (s.read("measurement", text)) {
        try {
            c.measurement = MeasurementKind::parse(text);
        } catch (const DomainError &e) {
            throw ConfigError(s.key("measurement"), e.what());
        }
    }
    s.read("seed", c.seed);
    if (s.read("entropy_base", text)) {
        c.entropy_base = choose<EntropyBase>(s, "entropy_base", text, {{"bits", EntropyBase::Bits}, {"nats", EntropyBase::Nats}});
    }
    s.read("track_bipartite", c.track_bipartite);
    if (s.read("bipartite_base", text)) {
        c.bipartite_base = choose<EntropyBase>(s, "bipartite_base", text, {{"bits", EntropyBase::Bits}, {"nats", EntropyBase::Nats}});
    }
    if (s.read("ancilla_side", text)) {
        c.ancilla_side = choose<AncillaSide>(s, "ancilla_side", text, {{"A", AncillaSide::A}, {"B", AncillaSide::B}});
    }
    s.read("cut", c.cut);
    c.validate();
    cfg.circuit = c;
}

void parse_ensemble(const Section &s, ExperimentConfig &cfg) {
    s.allow({"realizations", "workers"});
    s.read("realizations", cfg.ensemble.realizations);
    s.read("workers", cfg.ensemble.workers);
    if (cfg.ensemble.realizations < 1) {
        throw ConfigError(s.key("realizations"), "must be at least 1");
    }
    if (cfg.ensemble.workers < 1) {
        throw ConfigError(s.key("workers"), "must be at least 1");
    }
}

void parse_noise(const Section &s, ExperimentConfig &cfg) {
    s.allow({"T1_cavity", "n_bar_cavity", "coupler", "T1_transmon", "T_phi_transmon", "epsilon_readout", "T_snap", "T_parity", "tau_bs",
             "swap", "truncation", "trace_tolerance", "residual_window", "channels"});
    noise::NoiseParams &n = cfg.noise;
    s.read("T1_cavity", n.t1_cavity);
    s.read("n_bar_cavity", n.n_bar_cavity);
    s.read("T1_transmon", n.t1_transmon);
    s.read("T_phi_transmon", n.t_phi_transmon);
    s.read("epsilon_readout", n.epsilon_readout);
    s.read("T_snap", n.t_snap);
    s.read("T_parity", n.t_parity);
    s.read("tau_bs", n.tau_bs);
    s.read("swap", n.swap);
    s.read("truncation", n.truncation);
    s.read("trace_tolerance", n.trace_tolerance);
    s.read("residual_window", n.residual_window);
    if (s.has("coupler")) {
        Section c = s.sub("coupler");
        c.allow({"g", "delta", "T1_C", "T_phi_C", "n_C", "spectrum"});
        c.read("g", n.coupler.g);
        c.read("delta", n.coupler.delta);
        c.read("T1_C", n.coupler.t1);
        c.read("T_phi_C", n.coupler.t_phi);
        c.read("n_C", n.coupler.n_thermal);
        std::string text;
        if (c.read("spectrum", text)) {
            n.coupler.spectrum = choose<hw::NoiseSpectrum>(c, "spectrum", text, {{"pink", hw::NoiseSpectrum::Pink}, {"white", hw::NoiseSpectrum::White}});
        }
    }
    if (s.has("channels")) {
        Section c = s.sub("channels");
        c.allow({"decay", "beam_splitter", "snap", "parity"});
        unsigned mask = 0;
        std::pair<const char *, unsigned> bits[] = {
            {"decay", noise::kDecay}, {"beam_splitter", noise::kBeamSplitter}, {"snap", noise::kSnap}, {"parity", noise::kParity}};
        for (const auto &[name, bit] : bits) {
            bool on = true;
            c.read(name, on);
            mask |= on ? bit : 0u;
        }
        cfg.channel_mask = mask;
    }
    n.validate();
}

void parse_analysis(const Section &s, ExperimentConfig &cfg) {
    s.allow({"z", "p_c", "p_grid", "L_list", "t_over_L", "inputs"});
    AnalysisParams &a = cfg.analysis;
    s.read("z", a.z);
    s.read("p_c", a.p_c);
    s.read("p_grid", a.p_grid);
    s.read("L_list", a.L_list);
    s.read("t_over_L", a.t_over_L);
    s.read("inputs", a.inputs);
    if (!(a.z > 0.0)) {
        throw ConfigError(s.key("z"), "must be positive");
    }
    if (!(a.p_c >= 0.0 && a.p_c <= 1.0)) {
        throw ConfigError(s.key("p_c"), "must lie in [0, 1]");
    }
    for (double p : a.p_grid) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw ConfigError(s.key("p_grid"), "measurement rates must lie in [0, 1]");
        }
    }
    for (int l : a.L_list) {
        if (l < 2 || l > 64) {
            throw ConfigError(s.key("L_list"), "sizes must lie in [2, 64]");
        }
    }
    if (!(a.t_over_L > 0.0)) {
        throw ConfigError(s.key("t_over_L"), "must be positive");
    }
}

void parse_output(const Section &s, ExperimentConfig &cfg) {
    s.allow({"dir", "prefix", "records"});
    s.read("dir", cfg.output.dir);
    s.read("prefix", cfg.output.prefix);
    s.read("records", cfg.output.records);
    if (cfg.output.prefix.empty() || cfg.output.prefix.find('/') != std::string::npos) {
        throw ConfigError(s.key("prefix"), "must be a non-empty file name prefix");
    }
}

}  // namespace

std::vector<double> default_p_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 20; i++) {
        grid.push_back(i / 20.0);
    }
    return grid;
}

std::vector<double> ExperimentConfig::p_values() const {
    if (!analysis.p_grid.empty()) {
        return analysis.p_grid;
    }
    if (p_given) {
        return {circuit.p};
    }
    return default_p_grid();
}

std::vector<int> ExperimentConfig::sizes() const {
    if (!analysis.L_list.empty()) {
        return analysis.L_list;
    }
    return {circuit.modes};
}

CircuitConfig ExperimentConfig::circuit_for(int modes, double p) const {
    CircuitConfig c = circuit;
    if (!analysis.L_list.empty()) {
        CircuitConfig d = CircuitConfig::defaults(modes, circuit.init);
        c.modes = modes;
        c.photons = d.photons;
        c.scramble_layers = d.scramble_layers;
        c.monitored_layers = d.monitored_layers;
        c.cut = 0;
    }
    if (scramble_layers_per_L) {
        c.scramble_layers = *scramble_layers_per_L * modes;
    }
    if (monitored_layers_per_L) {
        c.monitored_layers = *monitored_layers_per_L * modes;
    }
    c.p = p;
    c.validate();
    return c;
}

std::string ExperimentConfig::hash() const {
    // nlohmann::json keeps object keys sorted, so dump() is canonical.
    return fnv1a_hex(source.dump());
}

ExperimentConfig parse_config(const nlohmann::json &j) {
    Section root(j, "");
    root.allow({"circuit", "ensemble", "noise", "analysis", "output"});
    ExperimentConfig cfg;
    cfg.source = j;
    static const json kEmpty = json::object();
    parse_circuit(root.has("circuit") ? root.sub("circuit") : Section(kEmpty, "circuit"), cfg);
    if (root.has("ensemble")) {
        parse_ensemble(root.sub("ensemble"), cfg);
    }
    if (root.has("noise")) {
        parse_noise(root.sub("noise"), cfg);
    }
    if (root.has("analysis")) {
        parse_analysis(root.sub("analysis"), cfg);
    }
    if (root.has("output")) {
        parse_output(root.sub("output"), cfg);
    }
    return cfg;
}

ExperimentConfig load_config(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("config", "cannot open " + path);
    }
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error &e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(j);
}

}  // namespace bosonmon
