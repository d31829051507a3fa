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

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>

#include "bosonmon/errors.h"

using namespace bosonmon;
using nlohmann::json;

namespace {

std::string error_key(const json &j) {
    try {
        parse_config(j);
    } catch (const ConfigError &e) {
        return e.key;
    }
    return "";
}

}  // namespace

TEST(parse_config, empty_object_gives_defaults) {
    ExperimentConfig cfg = parse_config(json::object());
    EXPECT_EQ(cfg.circuit.modes, 8);
    EXPECT_EQ(cfg.circuit.photons, 4);
    EXPECT_EQ(cfg.ensemble.realizations, 1000);
    EXPECT_EQ(cfg.ensemble.workers, 1);
    EXPECT_EQ(cfg.channel_mask, noise::kAllChannels);
    EXPECT_FALSE(cfg.p_given);
    EXPECT_EQ(cfg.p_values(), default_p_grid());
    EXPECT_EQ(cfg.sizes(), std::vector<int>{8});
}

TEST(parse_config, reads_every_section) {
    json j = json::parse(R"({
        "circuit": {"L": 6, "Q": 3, "p": 0.25, "U": 2.0, "gate_mode": "BSRP", "with_snap": true,
                    "snap_placement": "all_modes", "measurement": "mod3", "init": "checkerboard", "seed": 99,
                    "entropy_base": "nats"},
        "ensemble": {"realizations": 12, "workers": 3},
        "noise": {"T1_cavity": 10000.0, "channels": {"snap": false, "parity": false}},
        "analysis": {"z": 1.5, "p_c": 0.2, "t_over_L": 1.0},
        "output": {"dir": "/tmp/x", "prefix": "run", "records": true}
    })");
    ExperimentConfig cfg = parse_config(j);
    EXPECT_EQ(cfg.circuit.modes, 6);
    EXPECT_EQ(cfg.circuit.photons, 3);
    EXPECT_DOUBLE_EQ(cfg.circuit.p, 0.25);
    EXPECT_DOUBLE_EQ(cfg.circuit.strength, 2.0);
    EXPECT_EQ(cfg.circuit.gate_mode, GateMode::BSRP);
    EXPECT_TRUE(cfg.circuit.with_snap);
    EXPECT_EQ(cfg.circuit.placement, SnapPlacement::AllModes);
    EXPECT_EQ(cfg.circuit.measurement, MeasurementKind::mod(3));
    EXPECT_EQ(cfg.circuit.init, InitKind::Checkerboard);
    EXPECT_EQ(cfg.circuit.seed, 99u);
    EXPECT_EQ(cfg.circuit.entropy_base, EntropyBase::Nats);
    EXPECT_EQ(cfg.ensemble.realizations, 12);
    EXPECT_EQ(cfg.ensemble.workers, 3);
    EXPECT_DOUBLE_EQ(cfg.noise.t1_cavity, 10000.0);
    EXPECT_EQ(cfg.channel_mask, noise::kDecay | noise::kBeamSplitter);
    EXPECT_DOUBLE_EQ(cfg.analysis.z, 1.5);
    EXPECT_EQ(cfg.output.prefix, "run");
    EXPECT_TRUE(cfg.output.records);
    EXPECT_TRUE(cfg.p_given);
    EXPECT_EQ(cfg.p_values(), std::vector<double>{0.25});
}

TEST(parse_config, errors_name_the_key) {
    EXPECT_EQ(error_key(json::parse(R"({"circuit": {"foo": 1}})")), "circuit.foo");
    EXPECT_EQ(error_key(json::parse(R"({"bogus": {}})")), "bogus");
    EXPECT_EQ(error_key(json::parse(R"({"circuit": {"p": 1.5}})")), "circuit.p");
    EXPECT_EQ(error_key(json::parse(R"({"circuit": {"p": "high"}})")), "circuit.p");
    EXPECT_EQ(error_key(json::parse(R"({"circuit": {"L": 2.5}})")), "circuit.L");
    EXPECT_EQ(error_key(json::parse(R"({"circuit": {"L": 1}})")), "circuit.L");
    EXPECT_EQ(error_key(json::parse(R"({"circuit": {"gate_mode": "XY"}})")), "circuit.gate_mode");
    EXPECT_EQ(error_key(json::parse(R"({"circuit": {"measurement": "mod1"}})")), "circuit.measurement");
    EXPECT_EQ(error_key(json::parse(R"({"ensemble": {"workers": 0}})")), "ensemble.workers");
    EXPECT_EQ(error_key(json::parse(R"({"noise": {"coupler": {"spectrum": "blue"}}})")), "noise.coupler.spectrum");
    EXPECT_EQ(error_key(json::parse(R"({"noise": {"channels": {"decay": 1}}})")), "noise.channels.decay");
    EXPECT_EQ(error_key(json::parse(R"({"analysis": {"z": 0}})")), "analysis.z");
    EXPECT_EQ(error_key(json::parse(R"({"analysis": {"p_grid": [0.1, 1.2]}})")), "analysis.p_grid");
    EXPECT_EQ(error_key(json::parse(R"({"analysis": {"L_list": [4, 100]}})")), "analysis.L_list");
    EXPECT_EQ(error_key(json::parse(R"({"output": {"prefix": "a/b"}})")), "output.prefix");
    EXPECT_EQ(error_key(json::parse(R"({"circuit": 3})")), "circuit");
    EXPECT_EQ(error_key(json::parse("[]")), "config");
}

TEST(parse_config, hash_ignores_key_order) {
    json a = json::parse(R"({"circuit": {"L": 6, "p": 0.3}, "ensemble": {"workers": 2}})");
    json b = json::parse(R"({"ensemble": {"workers": 2}, "circuit": {"p": 0.3, "L": 6}})");
    json c = json::parse(R"({"circuit": {"L": 6, "p": 0.35}, "ensemble": {"workers": 2}})");
    EXPECT_EQ(parse_config(a).hash(), parse_config(b).hash());
    EXPECT_NE(parse_config(a).hash(), parse_config(c).hash());
    EXPECT_EQ(parse_config(a).hash().size(), 16u);
}

TEST(default_p_grid, twenty_one_points) {
    auto grid = default_p_grid();
    ASSERT_EQ(grid.size(), 21u);
    EXPECT_EQ(grid.front(), 0.0);
    EXPECT_EQ(grid.back(), 1.0);
    EXPECT_NEAR(grid[3], 0.15, 1e-15);
}

TEST(circuit_for, sizes_from_l_list) {
    json j = json::parse(R"({"circuit": {"L": 6, "init": "checkerboard", "U": 2.0},
                             "analysis": {"L_list": [4, 8], "p_grid": [0.1, 0.2]}})");
    ExperimentConfig cfg = parse_config(j);
    EXPECT_EQ(cfg.sizes(), (std::vector<int>{4, 8}));
    EXPECT_EQ(cfg.p_values(), (std::vector<double>{0.1, 0.2}));
    CircuitConfig c = cfg.circuit_for(8, 0.2);
    EXPECT_EQ(c.modes, 8);
    EXPECT_EQ(c.photons, 4);
    EXPECT_EQ(c.scramble_layers, 16);
    EXPECT_EQ(c.monitored_layers, 16);
    EXPECT_DOUBLE_EQ(c.p, 0.2);
    EXPECT_DOUBLE_EQ(c.strength, 2.0);

    json per_l = json::parse(R"({"circuit": {"monitored_layers_per_L": 3},
                                 "analysis": {"L_list": [4, 6]}})");
    ExperimentConfig cfg2 = parse_config(per_l);
    EXPECT_EQ(cfg2.circuit_for(6, 0.5).monitored_layers, 18);
    EXPECT_EQ(cfg2.circuit_for(4, 0.5).monitored_layers, 12);
    EXPECT_THROW(cfg2.circuit_for(6, 1.5), ConfigError);
}

TEST(load_config, file_errors_use_config_key) {
    try {
        load_config("/nonexistent/bosonmon.json");
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key, "config");
    }
    std::string path = testing::TempDir() + "bosonmon_bad.json";
    {
        std::ofstream(path) << "{\"circuit\": ";
    }
    try {
        load_config(path);
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key, "config");
    }
    {
        std::ofstream(path) << R"({"circuit": {"L": 4}})";
    }
    EXPECT_EQ(load_config(path).circuit.modes, 4);
    std::remove(path.c_str());
}
