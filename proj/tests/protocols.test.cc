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

#include "bosonmon/protocols.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "bosonmon/errors.h"
#include "oracle.h"

using namespace bosonmon;

namespace {

CircuitConfig interacting(int l, double p) {
    CircuitConfig c = CircuitConfig::defaults(l);
    c.p = p;
    c.strength = 2.0;
    c.with_snap = true;
    return c;
}

void expect_same_records(const std::vector<EntropyRecord> &a, const std::vector<EntropyRecord> &b) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); i++) {
        EXPECT_EQ(a[i].t, b[i].t);
        EXPECT_EQ(a[i].mean, b[i].mean);
        EXPECT_EQ(a[i].sem, b[i].sem);
        EXPECT_EQ(a[i].n_realizations, b[i].n_realizations);
    }
}

}  // namespace

TEST(init_haar_pair, orthonormal_branches) {
    for (auto [l, q] : {std::pair{2, 1}, {4, 2}, {6, 3}}) {
        auto basis = std::make_shared<const SectorBasis>(l, q);
        Rng rng(static_cast<std::uint64_t>(l));
        HaarPair pair = init_haar_pair(basis, rng);
        EXPECT_NEAR(pair.psi0.norm(), 1.0, 1e-12);
        EXPECT_NEAR(pair.psi1.norm(), 1.0, 1e-12);
        Complex overlap = 0;
        for (std::size_t k = 0; k < basis->size(); k++) {
            overlap += std::conj(pair.psi0.at(k)) * pair.psi1.at(k);
            EXPECT_NEAR(std::abs(pair.global.at(k, 0) - pair.psi0.at(k) / std::sqrt(2.0)), 0.0, 1e-15);
            EXPECT_NEAR(std::abs(pair.global.at(k, 1) - pair.psi1.at(k) / std::sqrt(2.0)), 0.0, 1e-15);
        }
        EXPECT_LT(std::abs(overlap), 1e-12);
        EXPECT_NEAR(ancilla_entropy(pair.global), 1.0, 1e-12);
    }
    Rng rng(1);
    EXPECT_THROW(init_haar_pair(std::make_shared<const SectorBasis>(2, 0), rng), DomainError);
}

TEST(init_checkerboard, amplitudes_as_printed) {
    auto basis = std::make_shared<const SectorBasis>(4, 2);
    PureState s = init_checkerboard(basis);
    double r = 1 / std::sqrt(2.0);
    int nonzero = 0;
    for (auto a : s.amplitudes()) {
        nonzero += std::abs(a) > 0 ? 1 : 0;
    }
    EXPECT_EQ(nonzero, 2);
    EXPECT_NEAR(std::abs(s.at(basis->rank(std::vector<int>{0, 1, 0, 1}), 0) - r), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(s.at(basis->rank(std::vector<int>{1, 0, 1, 0}), 1) - r), 0.0, 1e-15);
    EXPECT_NEAR(ancilla_entropy(s), 1.0, 1e-12);
    EXPECT_THROW(init_checkerboard(std::make_shared<const SectorBasis>(3, 1)), ConfigError);
    EXPECT_THROW(init_checkerboard(std::make_shared<const SectorBasis>(4, 3)), ConfigError);
}

TEST(circuit_config, validation_names_keys) {
    CircuitConfig c = CircuitConfig::defaults(4);
    c.p = 1.5;
    try {
        c.validate();
        FAIL();
    } catch (const ConfigError &e) {
        EXPECT_EQ(e.key, "circuit.p");
    }
    c = CircuitConfig::defaults(4);
    c.monitored_layers = -1;
    EXPECT_THROW(c.validate(), ConfigError);
    c = CircuitConfig::defaults(5, InitKind::Checkerboard);
    EXPECT_THROW(c.validate(), ConfigError);
    EXPECT_EQ(CircuitConfig::defaults(8).photons, 4);
    EXPECT_EQ(CircuitConfig::defaults(8).monitored_layers, 32);
    EXPECT_EQ(CircuitConfig::defaults(8, InitKind::Checkerboard).scramble_layers, 16);
    EXPECT_EQ(CircuitConfig::defaults(8, InitKind::Checkerboard).monitored_layers, 16);
}

TEST(sample_realization, schedule_and_measurement_rate) {
    CircuitConfig c = interacting(6, 0.3);
    c.scramble_layers = 3;
    c.monitored_layers = 400;
    Rng rng(8);
    CircuitRealization r = sample_realization(c, rng);
    ASSERT_EQ(r.scramble.size(), 3u);
    ASSERT_EQ(r.monitored.size(), 400u);
    EXPECT_EQ(r.scramble[0].layer_index, 1);
    EXPECT_EQ(r.monitored[0].gates.layer_index, 4);
    EXPECT_EQ(r.monitored[0].gates.gates[0].site, 1);
    double n = static_cast<double>(r.num_measurements());
    double mean = 6 * 400 * 0.3;
    EXPECT_LT(std::abs(n - mean), 4 * std::sqrt(mean * 0.7));
    for (const auto &layer : r.monitored) {
        for (std::size_t i = 1; i < layer.measured_sites.size(); i++) {
            EXPECT_LT(layer.measured_sites[i - 1], layer.measured_sites[i]);
        }
    }
}

TEST(run_purification, entropy_list_and_record) {
    CircuitConfig c = interacting(4, 0.5);
    c.monitored_layers = 10;
    c.track_bipartite = true;
    auto basis = std::make_shared<const SectorBasis>(4, 2);
    TrajectoryResult r = run_purification(c, basis, 5);
    EXPECT_EQ(r.ancilla_entropy.size(), 11u);
    EXPECT_EQ(r.bipartite_entropy.size(), 11u);
    EXPECT_NEAR(r.ancilla_entropy[0], 1.0, 1e-12);
    for (const auto &e : r.record.events) {
        EXPECT_GT(e.born_probability, 0.0);
        EXPECT_LE(e.born_probability, 1.0 + 1e-12);
        EXPECT_GE(e.layer, 1);
        EXPECT_LE(e.layer, 10);
    }
    TrajectoryResult again = run_purification(c, basis, 5);
    EXPECT_EQ(again.ancilla_entropy, r.ancilla_entropy);
}

TEST(run_purification, mean_measurement_count) {
    CircuitConfig c = interacting(4, 0.35);
    c.monitored_layers = 8;
    c.seed = 3;
    PurificationEnsemble e = ensemble_purification(c, 2000, 1);
    double expected = 4 * 8 * 0.35;
    EXPECT_LT(std::abs(e.mean_measurements - expected), 3 * e.sem_measurements + 1e-12);
}

TEST(run_purification, interacting_parity_purifies) {
    for (int l : {6, 8}) {
        CircuitConfig c = interacting(l, 1.0);
        c.monitored_layers = 2 * l;
        c.seed = 11;
        PurificationEnsemble e = ensemble_purification(c, 300, 1);
        const auto &early = e.ancilla[2];
        const auto &late = e.ancilla[2 * l];
        EXPECT_LT(late.mean + 3 * std::hypot(late.sem, early.sem), early.mean) << "L=" << l;
        if (l == 8) {
            EXPECT_LT(late.mean, 0.05);
        }
    }
}

TEST(ensemble_purification, independent_of_worker_count) {
    CircuitConfig c = interacting(6, 0.4);
    c.monitored_layers = 12;
    c.track_bipartite = true;
    c.seed = 77;
    PurificationEnsemble one = ensemble_purification(c, 40, 1);
    for (int workers : {4, 16}) {
        PurificationEnsemble many = ensemble_purification(c, 40, workers);
        expect_same_records(one.ancilla, many.ancilla);
        expect_same_records(one.bipartite, many.bipartite);
        EXPECT_EQ(one.mean_measurements, many.mean_measurements);
    }
}

TEST(ensemble_purification, sem_scales_as_inverse_sqrt_n) {
    CircuitConfig c = interacting(4, 0.3);
    c.monitored_layers = 8;
    c.seed = 5;
    double sem[3];
    int sizes[3] = {100, 400, 1600};
    for (int i = 0; i < 3; i++) {
        sem[i] = ensemble_purification(c, sizes[i], 1).ancilla[8].sem;
    }
    EXPECT_NEAR(sem[0] / sem[1], 2.0, 0.4);
    EXPECT_NEAR(sem[1] / sem[2], 2.0, 0.4);
}

TEST(run_monitored, matches_exact_born_average_l2) {
    auto basis = std::make_shared<const SectorBasis>(2, 1);
    CircuitConfig c = interacting(2, 1.0);
    c.photons = 1;
    c.monitored_layers = 2;
    Rng circuit(4);
    CircuitRealization realization = sample_realization(c, circuit);
    Rng init(4);
    PureState initial = init_haar_pair(basis, init).global;
    oracle::ExactTree exact = oracle::exact_tree(*basis, realization, c.measurement, oracle::as_matrix(initial));
    EXPECT_NEAR(exact.total_probability, 1.0, 1e-12);

    Rng outcomes(9);
    std::vector<double> finals;
    for (int i = 0; i < 20000; i++) {
        finals.push_back(run_monitored(c, realization, initial, outcomes).ancilla_entropy.back());
    }
    auto [mean, sem] = mean_and_sem(finals);
    EXPECT_LE(std::abs(mean - exact.mean_final_entropy), 3 * sem + 1e-12);
}

TEST(decide, credit_rules) {
    EXPECT_EQ(decide(0, -1.0, -2.0).credit, 1.0);
    EXPECT_EQ(decide(0, -1.0, -2.0).prediction, Prediction::Zero);
    EXPECT_EQ(decide(1, -1.0, -2.0).credit, 0.0);
    EXPECT_EQ(decide(1, -INFINITY, -2.0).credit, 1.0);
    EXPECT_EQ(decide(1, -3.0, -3.0 + 1e-13).prediction, Prediction::Tie);
    EXPECT_EQ(decide(1, -3.0, -3.0 + 1e-13).credit, 0.5);
    EXPECT_EQ(decide(0, -3.0, -3.0 + 1e-9).credit, 0.0);
}

TEST(run_learnability, no_measurements_is_a_tie) {
    CircuitConfig c = interacting(4, 0.0);
    c.monitored_layers = 6;
    auto basis = std::make_shared<const SectorBasis>(4, 2);
    LearnabilityTrial t = run_learnability(c, basis, 3);
    EXPECT_TRUE(t.record.events.empty());
    EXPECT_EQ(t.log_p0, 0.0);
    EXPECT_EQ(t.log_p1, 0.0);
    EXPECT_EQ(t.prediction, Prediction::Tie);
    EXPECT_EQ(t.credit, 0.5);
    EXPECT_EQ(ensemble_learnability(c, 20, 1).point.accuracy, 0.5);
}

TEST(run_learnability, true_label_always_possible) {
    CircuitConfig c = interacting(4, 0.6);
    c.monitored_layers = 8;
    auto basis = std::make_shared<const SectorBasis>(4, 2);
    for (std::uint64_t seed = 0; seed < 50; seed++) {
        LearnabilityTrial t = run_learnability(c, basis, seed);
        double own = t.alpha_true == 0 ? t.log_p0 : t.log_p1;
        EXPECT_TRUE(std::isfinite(own));
        EXPECT_LE(own, 1e-12);
        EXPECT_EQ(t.credit, decide(t.alpha_true, t.log_p0, t.log_p1).credit);
    }
}

TEST(run_learnability, sampled_accuracy_matches_exact_on_small_circuits) {
    for (auto [l, q] : {std::pair{2, 1}, {3, 2}}) {
        auto basis = std::make_shared<const SectorBasis>(l, q);
        CircuitConfig c = interacting(l, 0.7);
        c.photons = q;
        c.monitored_layers = 3;
        Rng circuit(static_cast<std::uint64_t>(10 + l));
        CircuitRealization realization = sample_realization(c, circuit);
        Rng init(static_cast<std::uint64_t>(20 + l));
        HaarPair pair = init_haar_pair(basis, init);

        std::map<std::vector<int>, double> p0;
        std::map<std::vector<int>, double> p1;
        for (const auto &leaf : oracle::forced_records(realization, c.measurement, pair.psi0)) {
            p0[leaf.outcomes] = leaf.probability;
        }
        for (const auto &leaf : oracle::forced_records(realization, c.measurement, pair.psi1)) {
            p1[leaf.outcomes] = leaf.probability;
        }
        std::map<std::vector<int>, bool> keys;
        for (const auto &kv : p0) keys[kv.first] = true;
        for (const auto &kv : p1) keys[kv.first] = true;
        double exact = 0;
        for (const auto &kv : keys) {
            exact += 0.5 * std::max(p0[kv.first], p1[kv.first]);
        }

        Rng rng(31);
        std::vector<double> credits;
        for (int trial = 0; trial < 20000; trial++) {
            int alpha = static_cast<int>(rng() & 1);
            PureState state = alpha == 0 ? pair.psi0 : pair.psi1;
            MeasurementRecord record;
            for (std::size_t li = 0; li < realization.monitored.size(); li++) {
                const auto &layer = realization.monitored[li];
                apply_layer(state, layer.gates);
                for (int site : layer.measured_sites) {
                    record.events.push_back(sample_and_collapse(state, site, c.measurement, rng, static_cast<int>(li + 1)));
                }
            }
            double l0 = replay_log_probability(realization, pair.psi0, record);
            double l1 = replay_log_probability(realization, pair.psi1, record);
            credits.push_back(decide(alpha, l0, l1).credit);
        }
        auto [mean, sem] = mean_and_sem(credits);
        EXPECT_LE(std::abs(mean - exact), 3 * sem) << "L=" << l << " exact=" << exact;
    }
}

TEST(initialization, scrambled_checkerboard_follows_haar_trend) {
    // Both preparations start fully entangled and purify further at higher p.
    std::vector<EntropyRecord> haar_final;
    std::vector<EntropyRecord> board_final;
    for (double p : {0.2, 0.6}) {
        CircuitConfig haar = interacting(8, p);
        haar.monitored_layers = 16;
        haar.seed = 101;
        CircuitConfig board = CircuitConfig::defaults(8, InitKind::Checkerboard);
        board.p = p;
        board.strength = 2.0;
        board.with_snap = true;
        board.seed = 202;
        PurificationEnsemble a = ensemble_purification(haar, 400, 1);
        PurificationEnsemble b = ensemble_purification(board, 400, 1);
        ASSERT_EQ(a.ancilla.size(), b.ancilla.size());
        EXPECT_NEAR(a.ancilla[0].mean, 1.0, 1e-10);
        EXPECT_NEAR(b.ancilla[0].mean, 1.0, 1e-10);
        haar_final.push_back(a.ancilla.back());
        board_final.push_back(b.ancilla.back());
    }
    for (const auto *f : {&haar_final, &board_final}) {
        const auto &low = (*f)[0];
        const auto &high = (*f)[1];
        EXPECT_GT(low.mean - high.mean, 3 * std::hypot(low.sem, high.sem));
    }
}

TEST(mean_and_sem, small_sample) {
    auto [m, s] = mean_and_sem({1.0, 2.0, 3.0, 4.0});
    EXPECT_DOUBLE_EQ(m, 2.5);
    EXPECT_NEAR(s, std::sqrt(5.0 / 3.0) / 2.0, 1e-15);
}
