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

#include "bosonmon/cli.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "CLI11.hpp"
#include "bosonmon/analysis.h"
#include "bosonmon/config.h"
#include "bosonmon/errors.h"
#include "bosonmon/hardware_model.h"
#include "bosonmon/io.h"
#include "bosonmon/noise.h"
#include "bosonmon/protocols.h"
#include "json.hpp"

namespace bosonmon {

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out_dir;
    std::vector<std::string> inputs;
};

class Run {
   public:
    Run(std::string command, ExperimentConfig cfg, std::ostream &out) : cfg_(std::move(cfg)), out_(out) {
        manifest_.command = std::move(command);
        manifest_.config_hash = cfg_.hash();
        manifest_.seed = cfg_.circuit.seed;
        manifest_.workers = cfg_.ensemble.workers;
        manifest_.started = utc_timestamp();
        std::filesystem::create_directories(cfg_.output.dir);
    }

    const ExperimentConfig &cfg() const {
        return cfg_;
    }

    std::ofstream open(const std::string &suffix) {
        std::filesystem::path path = std::filesystem::path(cfg_.output.dir) / (cfg_.output.prefix + "_" + suffix);
        std::ofstream f(path, std::ios::binary);
        if (!f) {
            throw std::runtime_error("cannot write " + path.string());
        }
        manifest_.outputs.push_back(path.string());
        return f;
    }

    void finish() {
        manifest_.finished = utc_timestamp();
        std::ofstream f = open(manifest_.command + "_manifest.json");
        manifest_.outputs.pop_back();
        write_manifest(f, manifest_);
        for (const auto &p : manifest_.outputs) {
            out_ << "wrote " << p << '\n';
        }
    }

   private:
    ExperimentConfig cfg_;
    std::ostream &out_;
    RunManifest manifest_;
};

ordered_json events_json(const MeasurementRecord &record) {
    ordered_json events = ordered_json::array();
    for (const auto &e : record.events) {
        events.push_back({{"layer", e.layer}, {"site", e.site}, {"kind", e.kind.name()}, {"outcome", e.outcome}, {"born_probability", e.born_probability}});
    }
    return events;
}

void run_purify(Run &run) {
    const ExperimentConfig &cfg = run.cfg();
    std::vector<EntropyRecord> ancilla;
    std::vector<EntropyRecord> bipartite;
    std::vector<std::string> record_lines;
    for (int modes : cfg.sizes()) {
        for (double p : cfg.p_values()) {
            CircuitConfig c = cfg.circuit_for(modes, p);
            PurificationEnsemble e = ensemble_purification(c, cfg.ensemble.realizations, cfg.ensemble.workers, cfg.output.records);
            ancilla.insert(ancilla.end(), e.ancilla.begin(), e.ancilla.end());
            bipartite.insert(bipartite.end(), e.bipartite.begin(), e.bipartite.end());
            for (std::size_t k = 0; k < e.records.size(); k++) {
                ordered_json line{{"L", modes}, {"p", p}, {"realization", k}, {"seed", mix_seed(c.seed, k)}, {"events", events_json(e.records[k])}};
                record_lines.push_back(line.dump());
            }
        }
    }
    {
        std::ofstream f = run.open("purify.csv");
        write_entropy_csv(f, ancilla);
    }
    if (cfg.circuit.track_bipartite) {
        std::ofstream f = run.open("bipartite.csv");
        write_entropy_csv(f, bipartite);
    }
    if (cfg.output.records) {
        std::ofstream f = run.open("purify_records.jsonl");
        for (const auto &line : record_lines) {
            f << line << '\n';
        }
    }
}

double json_log(double v) {
    return std::isfinite(v) ? v : -1e308;
}

void run_learn(Run &run) {
    const ExperimentConfig &cfg = run.cfg();
    std::vector<AccuracyPoint> points;
    std::vector<std::string> record_lines;
    for (int modes : cfg.sizes()) {
        for (double p : cfg.p_values()) {
            CircuitConfig c = cfg.circuit_for(modes, p);
            LearnabilityEnsemble e = ensemble_learnability(c, cfg.ensemble.realizations, cfg.ensemble.workers);
            points.push_back(e.point);
            if (cfg.output.records) {
                for (std::size_t k = 0; k < e.trials.size(); k++) {
                    const LearnabilityTrial &t = e.trials[k];
                    ordered_json line{{"L", modes}, {"p", p}, {"realization", k}, {"alpha", t.alpha_true},
                                      {"log_p0", json_log(t.log_p0)}, {"log_p1", json_log(t.log_p1)}, {"credit", t.credit},
                                      {"events", events_json(t.record)}};
                    record_lines.push_back(line.dump());
                }
            }
        }
    }
    {
        std::ofstream f = run.open("learn.csv");
        write_accuracy_csv(f, points);
    }
    if (cfg.output.records) {
        std::ofstream f = run.open("learn_records.jsonl");
        for (const auto &line : record_lines) {
            f << line << '\n';
        }
    }
}

void run_noise(Run &run, std::ostream &out) {
    const ExperimentConfig &cfg = run.cfg();
    std::vector<noise::NoiseEnsemble> results;
    for (int modes : cfg.sizes()) {
        for (double p : cfg.p_values()) {
            CircuitConfig c = cfg.circuit_for(modes, p);
            results.push_back(noise::run_noise_ensemble(c, cfg.noise, cfg.channel_mask, cfg.ensemble.realizations, cfg.ensemble.workers));
            const noise::NoiseEnsemble &r = results.back();
            out << "L=" << modes << " p=" << format_double(p) << " channel_mask=" << cfg.channel_mask
                << " residual_entropy=" << format_double(r.residual_entropy) << " sem=" << format_double(r.residual_entropy_sem) << '\n';
        }
    }
    {
        std::ofstream f = run.open("noise.csv");
        bool first = true;
        for (const auto &r : results) {
            std::ostringstream block;
            write_noise_csv(block, r);
            std::string text = block.str();
            if (!first) {
                text = text.substr(text.find('\n') + 1);
            }
            f << text;
            first = false;
        }
    }
    {
        std::ofstream f = run.open("noise_ideal.csv");
        std::vector<EntropyRecord> ideal;
        for (const auto &r : results) {
            ideal.insert(ideal.end(), r.ideal.begin(), r.ideal.end());
        }
        write_entropy_csv(f, ideal);
    }
}

void run_analyze(Run &run, const std::vector<std::string> &extra_inputs, std::ostream &err) {
    const ExperimentConfig &cfg = run.cfg();
    std::vector<std::string> inputs = cfg.analysis.inputs;
    inputs.insert(inputs.end(), extra_inputs.begin(), extra_inputs.end());
    if (inputs.empty()) {
        throw ConfigError("analysis.inputs", "no input CSV given (set analysis.inputs or pass --input)");
    }
    std::vector<EntropyRecord> records;
    for (const auto &path : inputs) {
        std::ifstream f(path);
        if (!f) {
            throw std::runtime_error("cannot read " + path);
        }
        std::vector<EntropyRecord> r = read_entropy_csv(f);
        records.insert(records.end(), r.begin(), r.end());
    }
    std::set<int> size_set;
    for (const auto &r : records) {
        size_set.insert(r.modes);
    }
    std::vector<int> sizes(size_set.begin(), size_set.end());
    std::vector<CrossingRow> rows;
    for (std::size_t i = 0; i + 1 < sizes.size(); i++) {
        int t_small = static_cast<int>(std::lround(cfg.analysis.t_over_L * sizes[i]));
        int t_large = static_cast<int>(std::lround(cfg.analysis.t_over_L * sizes[i + 1]));
        try {
            CrossingResult c = crossing_estimate(curve_at(records, sizes[i], t_small), curve_at(records, sizes[i + 1], t_large));
            for (const auto &root : c.roots) {
                rows.push_back(CrossingRow{sizes[i], sizes[i + 1], t_small, t_large, root, static_cast<int>(c.roots.size())});
            }
            if (c.multiple()) {
                err << "warning: L=" << sizes[i] << " and L=" << sizes[i + 1] << " cross " << c.roots.size() << " times\n";
            }
        } catch (const NoCrossingError &e) {
            err << "warning: " << e.what() << '\n';
        }
    }
    {
        std::ofstream f = run.open("crossing.csv");
        write_crossing_csv(f, rows);
    }
    {
        std::ofstream f = run.open("collapse.csv");
        write_collapse_csv(f, collapse_transform(records, cfg.analysis.z, cfg.analysis.p_c));
    }
}

void run_hw(Run &run, std::ostream &out) {
    const ExperimentConfig &cfg = run.cfg();
    const CircuitConfig &c = cfg.circuit;
    const noise::NoiseParams &n = cfg.noise;
    ordered_json j;
    ordered_json modes = ordered_json::array();
    for (std::size_t i = 0; i < n.coupler.g.size(); i++) {
        hw::EffectiveRates r = hw::effective_rates(
            n.coupler.g[i], n.coupler.delta[i], 1.0 / n.coupler.t1, 1.0 / n.coupler.t_phi, n.coupler.n_thermal, n.coupler.spectrum, 1.0 / n.t1_cavity);
        modes.push_back({{"g", n.coupler.g[i]}, {"delta", n.coupler.delta[i]}, {"kappa", r.kappa}, {"gamma", r.gamma},
                         {"T1_effective_us", 1.0 / r.kappa}, {"T_phi_effective_us", 1.0 / r.gamma}});
    }
    j["inherited_rates"] = modes;
    ordered_json wall;
    std::pair<const char *, hw::WallTimeModel> models[] = {
        {"BSFP", hw::WallTimeModel::BSFP}, {"BSRP", hw::WallTimeModel::BSRP}, {"with_hubbard", hw::WallTimeModel::WithHubbard}};
    for (const auto &[name, model] : models) {
        hw::WallTimeParams params{n.t_snap, n.t_parity, n.tau_bs, model};
        wall[name] = hw::wall_time(c.modes, c.scramble_layers, c.monitored_layers, c.p, params);
    }
    j["wall_time_us"] = wall;
    j["state_prep_time_us"] = hw::state_prep_time(c.modes);
    ordered_json parity = ordered_json::array();
    for (int photons = 0; photons <= 9; photons++) {
        hw::RamseyProbabilities r = hw::ramsey_probs(photons, hw::bit_readout_params(1.0, 0, 0));
        parity.push_back({{"n", photons}, {"p_ground", r.ground}});
    }
    j["parity_readout"] = parity;
    std::string text = j.dump(2);
    out << text << '\n';
    std::ofstream f = run.open("hw.json");
    f << text << '\n';
}

}  // namespace

int run_cli(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"Monitored bosonic circuit simulator", "bosonmon"};
    app.require_subcommand(1);
    Options opt;
    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", opt.config_path, "experiment JSON file");
        sub->add_option("--seed", opt.seed, "master seed (overrides circuit.seed)");
        sub->add_option("--workers", opt.workers, "worker threads (overrides ensemble.workers)")->check(CLI::PositiveNumber);
        sub->add_option("--out", opt.out_dir, "output directory (overrides output.dir)");
    };
    CLI::App *purify = app.add_subcommand("purify", "ancilla purification ensemble");
    CLI::App *learn = app.add_subcommand("learn", "learnability decoder ensemble");
    CLI::App *noise_cmd = app.add_subcommand("noise", "noisy density-matrix ensemble and residual entropy");
    CLI::App *analyze = app.add_subcommand("analyze", "crossings and scaling collapse from entropy CSVs");
    CLI::App *hw_cmd = app.add_subcommand("hw", "hardware timing and rate estimates");
    for (CLI::App *sub : {purify, learn, noise_cmd, analyze, hw_cmd}) {
        add_common(sub);
    }
    analyze->add_option("--input", opt.inputs, "entropy CSV (repeatable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    CLI::App *chosen = app.get_subcommands().front();
    try {
        nlohmann::json source = nlohmann::json::object();
        if (!opt.config_path.empty()) {
            std::ifstream in(opt.config_path);
            if (!in) {
                throw ConfigError("config", "cannot open " + opt.config_path);
            }
            try {
                source = nlohmann::json::parse(in);
            } catch (const nlohmann::json::parse_error &e) {
                throw ConfigError("config", std::string("invalid JSON: ") + e.what());
            }
        }
        if (opt.seed) {
            source["circuit"]["seed"] = *opt.seed;
        }
        if (opt.workers) {
            source["ensemble"]["workers"] = *opt.workers;
        }
        if (opt.out_dir) {
            source["output"]["dir"] = *opt.out_dir;
        }
        ExperimentConfig cfg = parse_config(source);
        Run run(chosen->get_name(), std::move(cfg), out);
        const std::string &name = chosen->get_name();
        if (name == "purify") {
            run_purify(run);
        } else if (name == "learn") {
            run_learn(run);
        } else if (name == "noise") {
            run_noise(run, out);
        } else if (name == "analyze") {
            run_analyze(run, opt.inputs, err);
        } else {
            run_hw(run, out);
        }
        run.finish();
    } catch (const ConfigError &e) {
        err << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace bosonmon
