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

#ifndef BOSONMON_NOISE_H
#define BOSONMON_NOISE_H

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "bosonmon/hardware_model.h"
#include "bosonmon/measurement.h"
#include "bosonmon/protocols.h"
#include "bosonmon/rng.h"

namespace bosonmon::noise {

// Times in microseconds throughout.

struct CouplerParams {
    /// Per-mode coupling and detuning, used cyclically (mode i takes entry i % size).
    std::vector<double> g{0.533, 0.592};
    std::vector<double> delta{2.261, 2.590};
    double t1 = 50.0;
    double t_phi = 5.0;
    double n_thermal = 0.02;
    hw::NoiseSpectrum spectrum = hw::NoiseSpectrum::Pink;
};

struct NoiseParams {
    double t1_cavity = 1500.0;
    double n_bar_cavity = 0.001;
    CouplerParams coupler;
    double t1_transmon = 200.0;
    double t_phi_transmon = 100.0;
    double epsilon_readout = 0.004;
    double t_snap = 1.32;
    double t_parity = 1.47;
    double tau_bs = 0.25;
    double swap = 0.5;
    int truncation = 0;  ///< local Fock cutoff d; 0 selects Q + 1
    double trace_tolerance = 1e-6;
    int residual_window = 1;  ///< number of final monitored layers averaged into the residual

    /// Throws ConfigError naming the offending "noise.*" key.
    void validate() const;
};

/// Which noise sources are active.
enum ChannelBit : unsigned {
    kDecay = 1u,         ///< intrinsic cavity/ancilla loss and heating, idle and active
    kBeamSplitter = 2u,  ///< coupler-inherited loss and dephasing during beam splitters
    kSnap = 4u,          ///< transmon-induced dephasing during SNAP gates
    kParity = 8u,        ///< transmon-induced dephasing during readout, plus misassignment
    kAllChannels = 15u,
};

/// A completely positive trace-preserving map on one d-level system.
/// `superop` acts on row-major vectorized density matrices, vec(rho)[i d + j] = rho(i, j).
struct Channel {
    int dim = 0;
    double duration = 0;
    Eigen::MatrixXcd superop;
    std::vector<Eigen::MatrixXcd> kraus;

    /// Builds the Kraus set from the Choi matrix of `superop`.
    static Channel from_superoperator(Eigen::MatrixXcd superop, int dim, double duration);
    /// sum_k K^dag K; the identity for a trace-preserving channel.
    Eigen::MatrixXcd kraus_completeness() const;
    Eigen::MatrixXcd apply(const Eigen::MatrixXcd &rho) const;
};

/// Truncated ladder operator on d levels.
Eigen::MatrixXcd annihilation(int d);

/// exp(tau L) for L[rho] = sum_c (C rho C^dag - {C^dag C, rho}/2), zero Hamiltonian.
Channel lindblad_channel(double tau, const std::vector<Eigen::MatrixXcd> &collapse, int d);

/// Loss and heating with collapse operators sqrt((1+n)/T1) a and sqrt(n/T1) a^dag.
Channel thermal_decay_channel(double tau, double t1, double n_bar, int d);

/// Dephasing with collapse operator sqrt(gamma) n: rho_jk -> rho_jk exp(-gamma tau (j-k)^2 / 2).
Channel dephasing_channel(double tau, double gamma_phi, int d);

/// Collapse operators sqrt(loss) a, sqrt(gain) a^dag and sqrt(gamma) n in a single generator.
Channel local_noise_channel(double tau, double loss, double gain, double gamma, int d);

/// Density matrix over L truncated modes (d levels each, mode 0 most significant)
/// tensored with a two-level reference ancilla (fastest index).
class DensityMatrix {
   public:
    DensityMatrix(int modes, int d);

    /// |psi><psi| for a sector state with ancilla. Throws DomainError if a mode holds more than d-1 photons.
    static DensityMatrix from_pure(const PureState &state, int d);

    int modes() const {
        return modes_;
    }
    int local_dim() const {
        return d_;
    }
    /// Subsystem index of the ancilla (modes are 0..L-1).
    int ancilla() const {
        return modes_;
    }
    Eigen::Index dim() const {
        return rho_.rows();
    }
    const Eigen::MatrixXcd &matrix() const {
        return rho_;
    }
    Eigen::MatrixXcd &matrix() {
        return rho_;
    }

    /// Level of `subsystem` in joint basis index i.
    int level(Eigen::Index i, int subsystem) const {
        return static_cast<int>((i / stride_[subsystem]) % dims_[subsystem]);
    }

    void apply_channel(int subsystem, const Channel &channel);
    /// rho -> U rho U^dag with U acting on modes (site, site+1), U of size d^2 x d^2 (site level most significant).
    void apply_pair_unitary(int site, const Eigen::MatrixXcd &u);
    /// rho -> D rho D^dag with D = diag(phases) on one subsystem.
    void apply_diagonal(int subsystem, const std::vector<Complex> &phases);

    std::vector<double> outcome_distribution(int site, const MeasurementKind &kind) const;
    /// Projects `site` onto `outcome` and renormalizes. Returns the pre-projection weight.
    /// Throws ZeroProbabilityError if that weight is below 1e-14.
    double collapse(int site, const MeasurementKind &kind, int outcome);

    Eigen::Matrix2cd ancilla_reduced() const;
    double trace() const;
    double hermiticity_error() const;
    double min_eigenvalue() const;

   private:
    int modes_;
    int d_;
    std::vector<int> dims_;
    std::vector<Eigen::Index> stride_;
    Eigen::MatrixXcd rho_;
};

/// Beam splitter on two d-level modes, exp(i theta (e^{-i phi} a b^dag + e^{i phi} a^dag b)) with
/// truncated ladder operators. Agrees with two_mode_block on every pair total below d.
Eigen::MatrixXcd truncated_beam_splitter(int d, double theta, double phi);

/// Samples the ideal outcome, then with probability epsilon flips the recorded
/// outcome and collapses with the flipped projector (parity only). If the flipped
/// outcome has weight below 1e-14 the recorded outcome is still flipped but the
/// state collapses with the ideal projector, and `collapse_skipped` is set.
struct NoisyOutcome {
    int outcome = 0;
    bool flipped = false;
    bool collapse_skipped = false;
    double probability = 0;
};
NoisyOutcome noisy_measure(DensityMatrix &rho, int site, const MeasurementKind &kind, double epsilon, Rng &rng);

struct NoisyTrajectory {
    std::vector<double> ancilla_entropy;  ///< t = 0..M
    MeasurementRecord record;
    int flips = 0;
    int skipped_collapses = 0;
    double elapsed = 0;  ///< simulated wall time
};

/// One hybrid density-matrix trajectory: channels applied exactly, measurement outcomes sampled.
/// The circuit is drawn with sample_realization from the same stream as the pure-state
/// protocol, so identical seeds give identical circuits. Throws std::runtime_error on trace drift.
NoisyTrajectory run_noisy_trajectory(const CircuitConfig &config, const NoiseParams &noise, unsigned channel_mask, std::uint64_t trajectory_seed);

struct NoiseEnsemble {
    std::vector<EntropyRecord> noisy;
    std::vector<EntropyRecord> ideal;
    std::vector<double> residual;      ///< mean noisy - mean ideal per t
    std::vector<double> residual_sem;  ///< SEM of per-realization paired differences
    double residual_entropy = 0;       ///< paired residual averaged over the final residual_window layers
    double residual_entropy_sem = 0;
    unsigned channel_mask = 0;
    int skipped_collapses = 0;
};

/// Noisy ensemble against the ideal pure-state ensemble on identical circuits and seeds.
NoiseEnsemble run_noise_ensemble(const CircuitConfig &config, const NoiseParams &noise, unsigned channel_mask, int n_realizations, int workers);

}  // namespace bosonmon::noise

#endif
