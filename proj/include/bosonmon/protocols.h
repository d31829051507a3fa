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

#ifndef BOSONMON_PROTOCOLS_H
#define BOSONMON_PROTOCOLS_H

#include <cstdint>
#include <limits>
#include <memory>
#include <utility>
#include <vector>

#include "bosonmon/gates.h"
#include "bosonmon/measurement.h"
#include "bosonmon/observables.h"
#include "bosonmon/rng.h"
#include "bosonmon/sector_basis.h"

namespace bosonmon {

enum class InitKind {
    HaarPair,      ///< (|psi0>|0> + |psi1>|1>)/sqrt2 with orthogonal random psi0, psi1
    Checkerboard,  ///< (|0101..>|0> + |1010..>|1>)/sqrt2
};

/// Full definition of one monitored-circuit experiment.
struct CircuitConfig {
    int modes = 8;
    int photons = 4;
    double p = 0.0;
    double strength = 0.0;  ///< on-site interaction U of the monitored layers
    GateMode gate_mode = GateMode::BSFP;
    bool with_snap = false;
    SnapPlacement placement = SnapPlacement::Brick;
    int scramble_layers = 0;
    int monitored_layers = 32;
    bool scramble_with_snap = true;
    double scramble_strength = 2.0;
    MeasurementKind measurement = MeasurementKind::parity();
    InitKind init = InitKind::HaarPair;
    std::uint64_t seed = 0;
    EntropyBase entropy_base = EntropyBase::Bits;
    bool track_bipartite = false;
    EntropyBase bipartite_base = EntropyBase::Nats;
    AncillaSide ancilla_side = AncillaSide::B;
    int cut = 0;  ///< bipartite cut; 0 selects L/2

    /// Half filling and the default depths: checkerboard runs scramble 2L layers
    /// and monitor 2L; Haar runs skip scrambling and monitor 4L.
    static CircuitConfig defaults(int modes, InitKind init = InitKind::HaarPair);

    int effective_cut() const {
        return cut > 0 ? cut : modes / 2;
    }

    /// Throws ConfigError naming the offending "circuit.*" key.
    void validate() const;
};

/// Monitored layer: gates, then measurements on the listed sites in increasing order.
struct MonitoredLayer {
    LayerSchedule gates;
    std::vector<int> measured_sites;
};

/// Every random choice of a circuit that does not depend on measurement outcomes.
struct CircuitRealization {
    std::vector<LayerSchedule> scramble;
    std::vector<MonitoredLayer> monitored;

    std::size_t num_measurements() const;
};

/// Draws scrambling layers 1..S, then monitored layers S+1..S+M (brick parity
/// continues across the boundary). Per monitored layer: gates, then one
/// Bernoulli(p) draw per site.
CircuitRealization sample_realization(const CircuitConfig &config, Rng &circuit_rng);

struct HaarPair {
    PureState global;  ///< with ancilla
    PureState psi0;    ///< system only
    PureState psi1;
};

/// Independent complex Gaussian vectors, Gram-Schmidt orthonormalized. Throws
/// DomainError if the sector has dimension below 2.
HaarPair init_haar_pair(std::shared_ptr<const SectorBasis> basis, Rng &rng);

/// Throws ConfigError if L is odd or Q != L/2.
PureState init_checkerboard(std::shared_ptr<const SectorBasis> basis);

struct TrajectoryResult {
    std::vector<double> ancilla_entropy;    ///< index t = 0..M, t = 0 after scrambling
    std::vector<double> bipartite_entropy;  ///< same indexing; empty unless tracked
    MeasurementRecord record;
    std::uint64_t seed = 0;
};

/// Runs `realization` on `state` (which must carry the ancilla), sampling outcomes from `outcomes`.
TrajectoryResult run_monitored(const CircuitConfig &config, const CircuitRealization &realization, PureState state, Rng &outcomes);

/// One ancilla-purification trajectory with streams derived from `trajectory_seed`.
TrajectoryResult run_purification(const CircuitConfig &config, std::shared_ptr<const SectorBasis> basis, std::uint64_t trajectory_seed);

enum class Prediction { Zero, One, Tie };

struct LearnabilityTrial {
    int alpha_true = 0;
    MeasurementRecord record;
    double log_p0 = 0;  ///< -inf when the record is impossible from psi0
    double log_p1 = 0;
    Prediction prediction = Prediction::Tie;
    double credit = 0.5;
};

/// log P(record | initial state) by replaying `realization` with forced outcomes;
/// -infinity if some forced outcome has zero probability.
double replay_log_probability(const CircuitRealization &realization, PureState state, const MeasurementRecord &record);

/// Decoder trial: random label, sampled record from |psi_alpha>, replay from both candidates.
LearnabilityTrial run_learnability(const CircuitConfig &config, std::shared_ptr<const SectorBasis> basis, std::uint64_t trajectory_seed);

/// Credit for a decoder decision: 1 correct, 0 wrong, 0.5 on a tie (|dlogP| < 1e-12).
LearnabilityTrial decide(int alpha_true, double log_p0, double log_p1);

/// One row of an entropy curve.
struct EntropyRecord {
    int modes = 0;
    int photons = 0;
    double p = 0;
    int t = 0;
    double mean = 0;
    double sem = 0;
    int n_realizations = 0;
    EntropyBase base = EntropyBase::Bits;
};

struct PurificationEnsemble {
    std::vector<EntropyRecord> ancilla;    ///< t = 0..M
    std::vector<EntropyRecord> bipartite;  ///< empty unless tracked
    double mean_measurements = 0;          ///< average number of measurement events per trajectory
    double sem_measurements = 0;
    std::vector<MeasurementRecord> records;  ///< per realization, only when requested
};

/// Realization k uses seed mix_seed(config.seed, k). Output is independent of `workers`.
PurificationEnsemble ensemble_purification(const CircuitConfig &config, int n_realizations, int workers, bool keep_records = false);

struct AccuracyPoint {
    int modes = 0;
    int photons = 0;
    double p = 0;
    double accuracy = 0;
    double sem = 0;
    int n_trials = 0;
};

struct LearnabilityEnsemble {
    AccuracyPoint point;
    std::vector<LearnabilityTrial> trials;
};

LearnabilityEnsemble ensemble_learnability(const CircuitConfig &config, int n_trials, int workers);

/// Mean and standard error (sample standard deviation / sqrt(n)) of `values`, summed in order.
std::pair<double, double> mean_and_sem(const std::vector<double> &values);

}  // namespace bosonmon

#endif
