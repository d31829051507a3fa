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

#include <cmath>
#include <random>
#include <string>

#include "bosonmon/errors.h"
#include "bosonmon/parallel.h"

namespace bosonmon {

CircuitConfig CircuitConfig::defaults(int modes, InitKind init) {
    CircuitConfig c;
    c.modes = modes;
    c.photons = modes / 2;
    c.init = init;
    if (init == InitKind::Checkerboard) {
        c.scramble_layers = 2 * modes;
        c.monitored_layers = 2 * modes;
    } else {
        c.scramble_layers = 0;
        c.monitored_layers = 4 * modes;
    }
    return c;
}

void CircuitConfig::validate() const {
    if (modes < 2) {
        throw ConfigError("circuit.L", "need at least 2 modes, got " + std::to_string(modes));
    }
    if (photons < 0) {
        throw ConfigError("circuit.Q", "must be non-negative, got " + std::to_string(photons));
    }
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError("circuit.p", "measurement rate must lie in [0, 1], got " + std::to_string(p));
    }
    if (!std::isfinite(strength)) {
        throw ConfigError("circuit.U", "must be finite");
    }
    if (!std::isfinite(scramble_strength)) {
        throw ConfigError("circuit.scramble_U", "must be finite");
    }
    if (scramble_layers < 0) {
        throw ConfigError("circuit.scramble_layers", "must be non-negative");
    }
    if (monitored_layers < 0) {
        throw ConfigError("circuit.monitored_layers", "must be non-negative");
    }
    if (init == InitKind::Checkerboard && (modes % 2 != 0 || photons != modes / 2)) {
        throw ConfigError("circuit.init", "checkerboard needs even L and Q = L/2");
    }
    if (cut < 0 || (track_bipartite && (effective_cut() < 1 || effective_cut() > modes - 1))) {
        throw ConfigError("circuit.cut", "must lie in [1, L-1]");
    }
}

std::size_t CircuitRealization::num_measurements() const {
    std::size_t n = 0;
    for (const auto &layer : monitored) {
        n += layer.measured_sites.size();
    }
    return n;
}

CircuitRealization sample_realization(const CircuitConfig &config, Rng &circuit_rng) {
    CircuitRealization r;
    int index = 1;
    for (int s = 0; s < config.scramble_layers; s++, index++) {
        r.scramble.push_back(sample_layer(
            circuit_rng, index, config.modes, config.gate_mode, config.scramble_strength, config.scramble_with_snap, config.placement));
    }
    for (int m = 0; m < config.monitored_layers; m++, index++) {
        MonitoredLayer layer;
        layer.gates = sample_layer(circuit_rng, index, config.modes, config.gate_mode, config.strength, config.with_snap, config.placement);
        for (int site = 0; site < config.modes; site++) {
            if (uniform01(circuit_rng) < config.p) {
                layer.measured_sites.push_back(site);
            }
        }
        r.monitored.push_back(std::move(layer));
    }
    return r;
}

HaarPair init_haar_pair(std::shared_ptr<const SectorBasis> basis, Rng &rng) {
    std::size_t dim = basis->size();
    if (dim < 2) {
        throw DomainError("a Haar pair needs a sector of dimension >= 2");
    }
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto draw = [&] {
        std::vector<Complex> v(dim);
        for (auto &z : v) {
            double re = gauss(rng);
            double im = gauss(rng);
            z = {re, im};
        }
        return v;
    };
    auto normalize = [](std::vector<Complex> &v) {
        double s = 0;
        for (const auto &z : v) {
            s += std::norm(z);
        }
        double inv = 1.0 / std::sqrt(s);
        for (auto &z : v) {
            z *= inv;
        }
    };
    std::vector<Complex> v0 = draw();
    std::vector<Complex> v1 = draw();
    normalize(v0);
    // Two Gram-Schmidt passes keep the overlap at machine precision.
    for (int pass = 0; pass < 2; pass++) {
        Complex overlap = 0;
        for (std::size_t k = 0; k < dim; k++) {
            overlap += std::conj(v0[k]) * v1[k];
        }
        for (std::size_t k = 0; k < dim; k++) {
            v1[k] -= overlap * v0[k];
        }
        normalize(v1);
    }
    std::vector<Complex> global(2 * dim);
    double r = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < dim; k++) {
        global[2 * k] = r * v0[k];
        global[2 * k + 1] = r * v1[k];
    }
    return HaarPair{
        PureState(basis, true, std::move(global)),
        PureState(basis, false, std::move(v0)),
        PureState(basis, false, std::move(v1)),
    };
}

PureState init_checkerboard(std::shared_ptr<const SectorBasis> basis) {
    int modes = basis->modes();
    if (modes % 2 != 0 || basis->photons() != modes / 2) {
        throw ConfigError("circuit.init", "checkerboard needs even L and Q = L/2");
    }
    OccupationVector zero_first(static_cast<std::size_t>(modes));
    OccupationVector one_first(static_cast<std::size_t>(modes));
    for (int i = 0; i < modes; i++) {
        zero_first[i] = i % 2;
        one_first[i] = 1 - i % 2;
    }
    PureState state(basis, true);
    double r = 1.0 / std::sqrt(2.0);
    state.at(basis->rank(zero_first), 0) = r;
    state.at(basis->rank(one_first), 1) = r;
    return state;
}

TrajectoryResult run_monitored(const CircuitConfig &config, const CircuitRealization &realization, PureState state, Rng &outcomes) {
    TrajectoryResult result;
    int cut = config.effective_cut();
    for (const auto &layer : realization.scramble) {
        apply_layer(state, layer);
    }
    result.ancilla_entropy.push_back(ancilla_entropy(state, config.entropy_base));
    if (config.track_bipartite) {
        result.bipartite_entropy.push_back(bipartite_entropy(state, cut, config.bipartite_base, config.ancilla_side));
    }
    int t = 1;
    for (const auto &layer : realization.monitored) {
        apply_layer(state, layer.gates);
        if (config.track_bipartite) {
            result.bipartite_entropy.push_back(bipartite_entropy(state, cut, config.bipartite_base, config.ancilla_side));
        }
        for (int site : layer.measured_sites) {
            result.record.events.push_back(sample_and_collapse(state, site, config.measurement, outcomes, t));
        }
        result.ancilla_entropy.push_back(ancilla_entropy(state, config.entropy_base));
        t++;
    }
    return result;
}

TrajectoryResult run_purification(const CircuitConfig &config, std::shared_ptr<const SectorBasis> basis, std::uint64_t trajectory_seed) {
    TrajectoryStreams streams(trajectory_seed);
    CircuitRealization realization = sample_realization(config, streams.circuit);
    PureState initial = config.init == InitKind::Checkerboard ? init_checkerboard(basis) : init_haar_pair(basis, streams.init).global;
    TrajectoryResult result = run_monitored(config, realization, std::move(initial), streams.outcomes);
    result.seed = trajectory_seed;
    return result;
}

double replay_log_probability(const CircuitRealization &realization, PureState state, const MeasurementRecord &record) {
    for (const auto &layer : realization.scramble) {
        apply_layer(state, layer);
    }
    double log_p = 0;
    std::size_t next = 0;
    for (const auto &layer : realization.monitored) {
        apply_layer(state, layer.gates);
        for (std::size_t i = 0; i < layer.measured_sites.size(); i++, next++) {
            const MeasurementEvent &e = record.events.at(next);
            try {
                log_p += std::log(force_and_collapse(state, e.site, e.kind, e.outcome));
            } catch (const ZeroProbabilityError &) {
                return -std::numeric_limits<double>::infinity();
            }
        }
    }
    return log_p;
}

LearnabilityTrial decide(int alpha_true, double log_p0, double log_p1) {
    LearnabilityTrial trial;
    trial.alpha_true = alpha_true;
    trial.log_p0 = log_p0;
    trial.log_p1 = log_p1;
    bool tie = (log_p0 == log_p1) || (std::isfinite(log_p0) && std::isfinite(log_p1) && std::abs(log_p0 - log_p1) < 1e-12);
    if (tie) {
        trial.prediction = Prediction::Tie;
        trial.credit = 0.5;
    } else {
        trial.prediction = log_p0 > log_p1 ? Prediction::Zero : Prediction::One;
        int predicted = trial.prediction == Prediction::Zero ? 0 : 1;
        trial.credit = predicted == alpha_true ? 1.0 : 0.0;
    }
    return trial;
}

LearnabilityTrial run_learnability(const CircuitConfig &config, std::shared_ptr<const SectorBasis> basis, std::uint64_t trajectory_seed) {
    TrajectoryStreams streams(trajectory_seed);
    CircuitRealization realization = sample_realization(config, streams.circuit);
    int alpha = uniform01(streams.init) < 0.5 ? 0 : 1;
    HaarPair pair = init_haar_pair(basis, streams.init);

    PureState state = alpha == 0 ? pair.psi0 : pair.psi1;
    for (const auto &layer : realization.scramble) {
        apply_layer(state, layer);
    }
    MeasurementRecord record;
    int t = 1;
    for (const auto &layer : realization.monitored) {
        apply_layer(state, layer.gates);
        for (int site : layer.measured_sites) {
            record.events.push_back(sample_and_collapse(state, site, config.measurement, streams.outcomes, t));
        }
        t++;
    }
    double log_p0 = replay_log_probability(realization, std::move(pair.psi0), record);
    double log_p1 = replay_log_probability(realization, std::move(pair.psi1), record);
    LearnabilityTrial trial = decide(alpha, log_p0, log_p1);
    trial.record = std::move(record);
    return trial;
}

std::pair<double, double> mean_and_sem(const std::vector<double> &values) {
    std::size_t n = values.size();
    if (n == 0) {
        return {0.0, 0.0};
    }
    double sum = 0;
    for (double v : values) {
        sum += v;
    }
    double mean = sum / static_cast<double>(n);
    if (n == 1) {
        return {mean, 0.0};
    }
    double ss = 0;
    for (double v : values) {
        ss += (v - mean) * (v - mean);
    }
    double var = ss / static_cast<double>(n - 1);
    return {mean, std::sqrt(var / static_cast<double>(n))};
}

namespace {

std::vector<EntropyRecord> reduce_curves(
    const CircuitConfig &config, const std::vector<std::vector<double>> &curves, EntropyBase base) {
    std::vector<EntropyRecord> out;
    if (curves.empty()) {
        return out;
    }
    std::size_t steps = curves.front().size();
    std::vector<double> column(curves.size());
    for (std::size_t t = 0; t < steps; t++) {
        for (std::size_t k = 0; k < curves.size(); k++) {
            column[k] = curves[k][t];
        }
        auto [mean, sem] = mean_and_sem(column);
        out.push_back(EntropyRecord{
            config.modes, config.photons, config.p, static_cast<int>(t), mean, sem, static_cast<int>(curves.size()), base});
    }
    return out;
}

}  // namespace

PurificationEnsemble ensemble_purification(const CircuitConfig &config, int n_realizations, int workers, bool keep_records) {
    config.validate();
    if (n_realizations < 1) {
        throw ConfigError("ensemble.realizations", "must be at least 1");
    }
    auto basis = std::make_shared<const SectorBasis>(config.modes, config.photons);
    struct Summary {
        std::vector<double> ancilla;
        std::vector<double> bipartite;
        double events = 0;
        MeasurementRecord record;
    };
    auto results = map_indexed(static_cast<std::size_t>(n_realizations), workers, [&](std::size_t k) {
        TrajectoryResult r = run_purification(config, basis, mix_seed(config.seed, k));
        double events = static_cast<double>(r.record.events.size());
        if (!keep_records) {
            r.record.events.clear();
        }
        return Summary{std::move(r.ancilla_entropy), std::move(r.bipartite_entropy), events, std::move(r.record)};
    });
    PurificationEnsemble out;
    std::vector<std::vector<double>> ancilla;
    std::vector<std::vector<double>> bipartite;
    std::vector<double> counts;
    for (auto &r : results) {
        counts.push_back(r.events);
        ancilla.push_back(std::move(r.ancilla));
        if (config.track_bipartite) {
            bipartite.push_back(std::move(r.bipartite));
        }
        if (keep_records) {
            out.records.push_back(std::move(r.record));
        }
    }
    out.ancilla = reduce_curves(config, ancilla, config.entropy_base);
    if (config.track_bipartite) {
        out.bipartite = reduce_curves(config, bipartite, config.bipartite_base);
    }
    std::tie(out.mean_measurements, out.sem_measurements) = mean_and_sem(counts);
    return out;
}

LearnabilityEnsemble ensemble_learnability(const CircuitConfig &config, int n_trials, int workers) {
    config.validate();
    if (n_trials < 1) {
        throw ConfigError("ensemble.realizations", "must be at least 1");
    }
    auto basis = std::make_shared<const SectorBasis>(config.modes, config.photons);
    LearnabilityEnsemble out;
    out.trials = map_indexed(static_cast<std::size_t>(n_trials), workers, [&](std::size_t k) {
        return run_learnability(config, basis, mix_seed(config.seed, k));
    });
    std::vector<double> credits;
    for (const auto &trial : out.trials) {
        credits.push_back(trial.credit);
    }
    auto [mean, sem] = mean_and_sem(credits);
    out.point = AccuracyPoint{config.modes, config.photons, config.p, mean, sem, n_trials};
    return out;
}

}  // namespace bosonmon
