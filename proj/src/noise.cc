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

#include "bosonmon/noise.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <unsupported/Eigen/MatrixFunctions>

#include "bosonmon/errors.h"
#include "bosonmon/observables.h"
#include "bosonmon/parallel.h"

namespace bosonmon::noise {

namespace {

constexpr double kZeroWeight = 1e-14;
constexpr Eigen::Index kMaxDensityDim = 8192;

Eigen::MatrixXcd kron(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void require_time(double value, const char *key) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw ConfigError(key, "must be a positive finite time");
    }
}

void require_probability(double value, const char *key) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw ConfigError(key, "must lie in [0, 1]");
    }
}

}  // namespace

void NoiseParams::validate() const {
    require_time(t1_cavity, "noise.T1_cavity");
    if (!(n_bar_cavity >= 0.0)) {
        throw ConfigError("noise.n_bar_cavity", "must be non-negative");
    }
    if (coupler.g.empty() || coupler.g.size() != coupler.delta.size()) {
        throw ConfigError("noise.coupler.g", "needs one entry per coupler delta, and at least one");
    }
    for (double delta : coupler.delta) {
        if (delta == 0.0 || !std::isfinite(delta)) {
            throw ConfigError("noise.coupler.delta", "detunings must be non-zero and finite");
        }
    }
    require_time(coupler.t1, "noise.coupler.T1_C");
    require_time(coupler.t_phi, "noise.coupler.T_phi_C");
    if (!(coupler.n_thermal >= 0.0)) {
        throw ConfigError("noise.coupler.n_C", "must be non-negative");
    }
    require_time(t1_transmon, "noise.T1_transmon");
    require_time(t_phi_transmon, "noise.T_phi_transmon");
    require_probability(epsilon_readout, "noise.epsilon_readout");
    require_time(t_snap, "noise.T_snap");
    require_time(t_parity, "noise.T_parity");
    require_time(tau_bs, "noise.tau_bs");
    require_time(swap, "noise.swap");
    if (truncation != 0 && truncation < 2) {
        throw ConfigError("noise.truncation", "must be 0 (automatic) or at least 2");
    }
    if (!(trace_tolerance > 0.0)) {
        throw ConfigError("noise.trace_tolerance", "must be positive");
    }
    if (residual_window < 1) {
        throw ConfigError("noise.residual_window", "must be at least 1");
    }
}

Channel Channel::from_superoperator(Eigen::MatrixXcd superop, int dim, double duration) {
    Channel ch;
    ch.dim = dim;
    ch.duration = duration;
    ch.superop = std::move(superop);
    int d2 = dim * dim;
    Eigen::MatrixXcd choi(d2, d2);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            for (int k = 0; k < dim; k++) {
                for (int l = 0; l < dim; l++) {
                    choi(i * dim + k, j * dim + l) = ch.superop(i * dim + j, k * dim + l);
                }
            }
        }
    }
    Eigen::MatrixXcd herm = 0.5 * (choi + choi.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm);
    for (int m = 0; m < d2; m++) {
        double lambda = eig.eigenvalues()(m);
        if (lambda <= 1e-15) {
            continue;
        }
        Eigen::MatrixXcd k(dim, dim);
        double scale = std::sqrt(lambda);
        for (int i = 0; i < dim; i++) {
            for (int j = 0; j < dim; j++) {
                k(i, j) = scale * eig.eigenvectors()(i * dim + j, m);
            }
        }
        ch.kraus.push_back(std::move(k));
    }
    return ch;
}

Eigen::MatrixXcd Channel::kraus_completeness() const {
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto &k : kraus) {
        sum += k.adjoint() * k;
    }
    return sum;
}

Eigen::MatrixXcd Channel::apply(const Eigen::MatrixXcd &rho) const {
    Eigen::VectorXcd v(dim * dim);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            v(i * dim + j) = rho(i, j);
        }
    }
    Eigen::VectorXcd w = superop * v;
    Eigen::MatrixXcd out(dim, dim);
    for (int i = 0; i < dim; i++) {
        for (int j = 0; j < dim; j++) {
            out(i, j) = w(i * dim + j);
        }
    }
    return out;
}

Eigen::MatrixXcd annihilation(int d) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 1; n < d; n++) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Channel lindblad_channel(double tau, const std::vector<Eigen::MatrixXcd> &collapse, int d) {
    if (d < 1) {
        throw DomainError("local dimension must be positive");
    }
    if (!(tau >= 0.0)) {
        throw DomainError("channel duration must be non-negative");
    }
    int d2 = d * d;
    Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);
    Eigen::MatrixXcd generator = Eigen::MatrixXcd::Zero(d2, d2);
    for (const auto &c : collapse) {
        Eigen::MatrixXcd cdc = c.adjoint() * c;
        generator += kron(c, c.conjugate());
        generator -= 0.5 * kron(cdc, identity);
        generator -= 0.5 * kron(identity, cdc.transpose());
    }
    Eigen::MatrixXcd superop = (tau * generator).exp();
    return Channel::from_superoperator(std::move(superop), d, tau);
}

Channel local_noise_channel(double tau, double loss, double gain, double gamma, int d) {
    if (loss < 0.0 || gain < 0.0 || gamma < 0.0) {
        throw DomainError("noise rates must be non-negative");
    }
    Eigen::MatrixXcd a = annihilation(d);
    std::vector<Eigen::MatrixXcd> ops;
    if (loss > 0.0) {
        ops.push_back(std::sqrt(loss) * a);
    }
    if (gain > 0.0) {
        ops.push_back(std::sqrt(gain) * a.adjoint());
    }
    if (gamma > 0.0) {
        ops.push_back(std::sqrt(gamma) * (a.adjoint() * a));
    }
    return lindblad_channel(tau, ops, d);
}

Channel thermal_decay_channel(double tau, double t1, double n_bar, int d) {
    if (!(t1 > 0.0) || n_bar < 0.0) {
        throw DomainError("T1 must be positive and n_bar non-negative");
    }
    return local_noise_channel(tau, (1.0 + n_bar) / t1, n_bar / t1, 0.0, d);
}

Channel dephasing_channel(double tau, double gamma_phi, int d) {
    return local_noise_channel(tau, 0.0, 0.0, gamma_phi, d);
}

DensityMatrix::DensityMatrix(int modes, int d) : modes_(modes), d_(d) {
    if (modes < 1 || d < 2) {
        throw DomainError("density matrix needs at least one mode and d >= 2");
    }
    Eigen::Index total = 2;
    for (int i = 0; i < modes; i++) {
        total *= d;
        if (total > kMaxDensityDim) {
            throw CapacityError("density matrix dimension d^L * 2 exceeds " + std::to_string(kMaxDensityDim));
        }
    }
    dims_.assign(static_cast<std::size_t>(modes), d);
    dims_.push_back(2);
    stride_.assign(dims_.size(), 1);
    for (int s = static_cast<int>(dims_.size()) - 2; s >= 0; s--) {
        stride_[s] = stride_[s + 1] * dims_[s + 1];
    }
    rho_ = Eigen::MatrixXcd::Zero(total, total);
}

DensityMatrix DensityMatrix::from_pure(const PureState &state, int d) {
    if (!state.has_ancilla()) {
        throw DomainError("noisy simulation needs a state with ancilla");
    }
    const SectorBasis &basis = state.basis();
    DensityMatrix out(basis.modes(), d);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(out.dim());
    for (std::size_t k = 0; k < basis.size(); k++) {
        Eigen::Index index = 0;
        bool nonzero = std::norm(state.at(k, 0)) + std::norm(state.at(k, 1)) > 0.0;
        for (int i = 0; i < basis.modes(); i++) {
            int n = basis.occupation(k, i);
            if (n >= d) {
                if (nonzero) {
                    throw DomainError("state has " + std::to_string(n) + " photons in mode " + std::to_string(i) +
                                      ", beyond the truncation d = " + std::to_string(d));
                }
                index = -1;
                break;
            }
            index += n * out.stride_[i];
        }
        if (index < 0) {
            continue;
        }
        psi(index) = state.at(k, 0);
        psi(index + 1) = state.at(k, 1);
    }
    out.rho_ = psi * psi.adjoint();
    return out;
}

void DensityMatrix::apply_channel(int subsystem, const Channel &channel) {
    int ds = dims_.at(static_cast<std::size_t>(subsystem));
    if (channel.dim != ds) {
        throw DomainError("channel dimension does not match subsystem");
    }
    Eigen::Index st = stride_[subsystem];
    Eigen::Index rest = dim() / ds;
    auto base = [&](Eigen::Index r) { return (r / st) * ds * st + r % st; };
    int d2 = ds * ds;
    struct Entry {
        int out;
        int in;
        Complex value;
    };
    std::vector<Entry> entries;
    for (int i = 0; i < d2; i++) {
        for (int j = 0; j < d2; j++) {
            if (channel.superop(i, j) != Complex(0.0)) {
                entries.push_back({i, j, channel.superop(i, j)});
            }
        }
    }
    std::vector<Eigen::Index> offset(static_cast<std::size_t>(d2));
    std::vector<Eigen::Index> col_offset(static_cast<std::size_t>(d2));
    for (int x = 0; x < ds; x++) {
        for (int y = 0; y < ds; y++) {
            offset[x * ds + y] = x * st;
            col_offset[x * ds + y] = y * st;
        }
    }
    std::vector<Complex> in(static_cast<std::size_t>(d2));
    std::vector<Complex> out(static_cast<std::size_t>(d2));
    for (Eigen::Index r2 = 0; r2 < rest; r2++) {
        Eigen::Index b2 = base(r2);
        for (Eigen::Index r1 = 0; r1 < rest; r1++) {
            Eigen::Index b1 = base(r1);
            for (int k = 0; k < d2; k++) {
                in[k] = rho_(b1 + offset[k], b2 + col_offset[k]);
                out[k] = 0.0;
            }
            for (const Entry &e : entries) {
                double ar = e.value.real(), ai = e.value.imag();
                double br = in[e.in].real(), bi = in[e.in].imag();
                out[e.out] += Complex(ar * br - ai * bi, ar * bi + ai * br);
            }
            for (int k = 0; k < d2; k++) {
                rho_(b1 + offset[k], b2 + col_offset[k]) = out[k];
            }
        }
    }
}

void DensityMatrix::apply_pair_unitary(int site, const Eigen::MatrixXcd &u) {
    if (site < 0 || site + 1 >= modes_) {
        throw DomainError("pair site out of range");
    }
    int d2 = d_ * d_;
    if (u.rows() != d2 || u.cols() != d2) {
        throw DomainError("pair unitary must be d^2 x d^2");
    }
    Eigen::Index s1 = stride_[site];
    Eigen::Index s2 = stride_[site + 1];
    Eigen::Index rest = dim() / d2;
    Eigen::Index span = s1 * d_;
    auto base = [&](Eigen::Index r) { return (r / s2) * span + r % s2; };
    std::vector<Eigen::Index> offsets(static_cast<std::size_t>(d2));
    for (int x = 0; x < d_; x++) {
        for (int y = 0; y < d_; y++) {
            offsets[x * d_ + y] = x * s1 + y * s2;
        }
    }
    Eigen::VectorXcd in(d2);
    Eigen::VectorXcd out(d2);
    Eigen::Index n = dim();
    // rho <- U rho
    for (Eigen::Index col = 0; col < n; col++) {
        for (Eigen::Index r = 0; r < rest; r++) {
            Eigen::Index b = base(r);
            for (int k = 0; k < d2; k++) {
                in(k) = rho_(b + offsets[k], col);
            }
            out.noalias() = u * in;
            for (int k = 0; k < d2; k++) {
                rho_(b + offsets[k], col) = out(k);
            }
        }
    }
    // rho <- rho U^dag
    Eigen::MatrixXcd uc = u.conjugate();
    for (Eigen::Index row = 0; row < n; row++) {
        for (Eigen::Index r = 0; r < rest; r++) {
            Eigen::Index b = base(r);
            for (int k = 0; k < d2; k++) {
                in(k) = rho_(row, b + offsets[k]);
            }
            out.noalias() = uc * in;
            for (int k = 0; k < d2; k++) {
                rho_(row, b + offsets[k]) = out(k);
            }
        }
    }
}

void DensityMatrix::apply_diagonal(int subsystem, const std::vector<Complex> &phases) {
    if (static_cast<int>(phases.size()) != dims_.at(static_cast<std::size_t>(subsystem))) {
        throw DomainError("diagonal size does not match subsystem");
    }
    Eigen::Index n = dim();
    for (Eigen::Index j = 0; j < n; j++) {
        Complex cj = std::conj(phases[level(j, subsystem)]);
        for (Eigen::Index i = 0; i < n; i++) {
            rho_(i, j) *= phases[level(i, subsystem)] * cj;
        }
    }
}

std::vector<double> DensityMatrix::outcome_distribution(int site, const MeasurementKind &kind) const {
    if (site < 0 || site >= modes_) {
        throw DomainError("measurement site " + std::to_string(site) + " out of range");
    }
    int outcomes = kind.is_number() ? d_ : kind.modulus();
    std::vector<double> probs(static_cast<std::size_t>(outcomes), 0.0);
    for (Eigen::Index i = 0; i < dim(); i++) {
        probs[kind.outcome_of(level(i, site))] += rho_(i, i).real();
    }
    return probs;
}

double DensityMatrix::collapse(int site, const MeasurementKind &kind, int outcome) {
    std::vector<double> probs = outcome_distribution(site, kind);
    if (outcome < 0 || outcome >= static_cast<int>(probs.size())) {
        throw DomainError("outcome " + std::to_string(outcome) + " out of range for " + kind.name());
    }
    double weight = probs[outcome];
    if (weight < kZeroWeight) {
        throw ZeroProbabilityError(weight);
    }
    Eigen::Index n = dim();
    std::vector<char> keep(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; i++) {
        keep[i] = kind.outcome_of(level(i, site)) == outcome;
    }
    double inv = 1.0 / weight;
    for (Eigen::Index j = 0; j < n; j++) {
        for (Eigen::Index i = 0; i < n; i++) {
            rho_(i, j) = (keep[i] && keep[j]) ? rho_(i, j) * inv : Complex(0.0);
        }
    }
    return weight;
}

Eigen::Matrix2cd DensityMatrix::ancilla_reduced() const {
    Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
    for (Eigen::Index m = 0; m < dim(); m += 2) {
        out(0, 0) += rho_(m, m);
        out(0, 1) += rho_(m, m + 1);
        out(1, 0) += rho_(m + 1, m);
        out(1, 1) += rho_(m + 1, m + 1);
    }
    return out;
}

double DensityMatrix::trace() const {
    return rho_.trace().real();
}

double DensityMatrix::hermiticity_error() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::MatrixXcd herm = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(herm, Eigen::EigenvaluesOnly);
    return eig.eigenvalues().minCoeff();
}

Eigen::MatrixXcd truncated_beam_splitter(int d, double theta, double phi) {
    Eigen::MatrixXcd a = annihilation(d);
    Eigen::MatrixXcd identity = Eigen::MatrixXcd::Identity(d, d);
    Eigen::MatrixXcd ab_dag = kron(a, identity) * kron(identity, a.adjoint());
    Complex phase = std::polar(1.0, -phi);
    Eigen::MatrixXcd h = phase * ab_dag;
    h += h.adjoint().eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
    Eigen::VectorXcd phases(h.rows());
    for (Eigen::Index k = 0; k < h.rows(); k++) {
        phases(k) = std::polar(1.0, theta * eig.eigenvalues()(k));
    }
    return eig.eigenvectors() * phases.asDiagonal() * eig.eigenvectors().adjoint();
}

NoisyOutcome noisy_measure(DensityMatrix &rho, int site, const MeasurementKind &kind, double epsilon, Rng &rng) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw DomainError("misassignment probability must lie in [0, 1]");
    }
    std::vector<double> probs = rho.outcome_distribution(site, kind);
    double u = uniform01(rng);
    int chosen = -1;
    double acc = 0;
    for (std::size_t o = 0; o < probs.size(); o++) {
        if (probs[o] < kZeroWeight) {
            continue;
        }
        chosen = static_cast<int>(o);
        acc += probs[o];
        if (u < acc) {
            break;
        }
    }
    if (chosen < 0) {
        throw ZeroProbabilityError(0.0);
    }
    NoisyOutcome result;
    result.outcome = chosen;
    result.probability = probs[chosen];
    int collapse_onto = chosen;
    if (epsilon > 0.0 && kind == MeasurementKind::parity() && uniform01(rng) < epsilon) {
        int flipped = 1 - chosen;
        result.outcome = flipped;
        result.flipped = true;
        if (probs[flipped] < kZeroWeight) {
            result.collapse_skipped = true;
        } else {
            collapse_onto = flipped;
            result.probability = probs[flipped];
        }
    }
    rho.collapse(site, kind, collapse_onto);
    return result;
}

namespace {

/// Tracks simulated time. Idle decay on each subsystem is accumulated and only
/// applied when that subsystem is next touched or observed; local channels on
/// different subsystems commute, so this is exact.
class Simulator {
   public:
    Simulator(DensityMatrix rho, const NoiseParams &noise, unsigned mask)
        : rho_(std::move(rho)), noise_(noise), mask_(mask), pending_(static_cast<std::size_t>(rho_.modes() + 1), 0.0) {
    }

    void layer(const LayerSchedule &layer) {
        if (layer.placement == SnapPlacement::AllModes) {
            for (const auto &g : layer.gates) {
                beam_splitter(g);
            }
            for (const auto &s : layer.snaps) {
                snap(s);
            }
            return;
        }
        std::size_t next_snap = 0;
        for (const auto &g : layer.gates) {
            beam_splitter(g);
            while (next_snap < layer.snaps.size() &&
                   (layer.snaps[next_snap].site == g.site || layer.snaps[next_snap].site == g.site + 1)) {
                snap(layer.snaps[next_snap]);
                next_snap++;
            }
        }
        for (; next_snap < layer.snaps.size(); next_snap++) {
            snap(layer.snaps[next_snap]);
        }
    }

    void beam_splitter(const BeamSplitterSpec &gate) {
        double tau = noise_.tau_bs * gate.theta / std::numbers::pi;
        int d = rho_.local_dim();
        flush(gate.site);
        flush(gate.site + 1);
        rho_.apply_pair_unitary(gate.site, truncated_beam_splitter(d, gate.theta, gate.phi));
        for (int mode : {gate.site, gate.site + 1}) {
            double loss = 0;
            double gain = 0;
            double gamma = 0;
            if (mask_ & kDecay) {
                loss += (1.0 + noise_.n_bar_cavity) / noise_.t1_cavity;
                gain += noise_.n_bar_cavity / noise_.t1_cavity;
            }
            if (mask_ & kBeamSplitter) {
                std::size_t c = static_cast<std::size_t>(mode) % noise_.coupler.g.size();
                hw::EffectiveRates inherited = hw::effective_rates(
                    noise_.coupler.g[c], noise_.coupler.delta[c], 1.0 / noise_.coupler.t1, 1.0 / noise_.coupler.t_phi,
                    noise_.coupler.n_thermal, noise_.coupler.spectrum, 0.0);
                loss += inherited.kappa;
                gamma += inherited.gamma;
            }
            if (tau > 0.0 && loss + gain + gamma > 0.0) {
                rho_.apply_channel(mode, local_noise_channel(tau, loss, gain, gamma, d));
            }
        }
        idle_except(tau, gate.site, gate.site + 1);
    }

    void snap(const SnapSpec &gate) {
        idle_all(noise_.swap);
        double active = std::max(0.0, noise_.t_snap - 2.0 * noise_.swap);
        flush(gate.site);
        int d = rho_.local_dim();
        std::vector<Complex> phases(static_cast<std::size_t>(d));
        for (int n = 0; n < d; n++) {
            phases[n] = std::polar(1.0, -gate.strength * n * n);
        }
        rho_.apply_diagonal(gate.site, phases);
        active_noise(gate.site, active, (mask_ & kSnap) != 0);
        idle_except(active, gate.site, gate.site);
        idle_all(noise_.swap);
    }

    NoisyOutcome measure(int site, const MeasurementKind &kind, Rng &rng) {
        idle_all(noise_.swap);
        double active = std::max(0.0, noise_.t_parity - 2.0 * noise_.swap);
        flush(site);
        active_noise(site, active, (mask_ & kParity) != 0);
        idle_except(active, site, site);
        double epsilon = (mask_ & kParity) ? noise_.epsilon_readout : 0.0;
        NoisyOutcome out = noisy_measure(rho_, site, kind, epsilon, rng);
        idle_all(noise_.swap);
        return out;
    }

    double ancilla_entropy(EntropyBase base) {
        flush(rho_.ancilla());
        Eigen::Matrix2cd r = rho_.ancilla_reduced();
        Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eig(0.5 * (r + r.adjoint()), Eigen::EigenvaluesOnly);
        std::array<double, 2> ev{eig.eigenvalues()(0), eig.eigenvalues()(1)};
        return von_neumann_entropy(ev, base);
    }

    void check_trace() const {
        double drift = std::abs(rho_.trace() - 1.0);
        if (drift > noise_.trace_tolerance) {
            throw std::runtime_error("density matrix trace drifted by " + std::to_string(drift));
        }
    }

    double elapsed() const {
        return elapsed_;
    }

   private:
    void idle_all(double tau) {
        for (double &p : pending_) {
            p += tau;
        }
        elapsed_ += tau;
    }

    void idle_except(double tau, int a, int b) {
        for (std::size_t i = 0; i < pending_.size(); i++) {
            if (static_cast<int>(i) != a && static_cast<int>(i) != b) {
                pending_[i] += tau;
            }
        }
        elapsed_ += tau;
    }

    void flush(int subsystem) {
        double &tau = pending_[static_cast<std::size_t>(subsystem)];
        if (tau > 0.0 && (mask_ & kDecay)) {
            int d = subsystem == rho_.ancilla() ? 2 : rho_.local_dim();
            rho_.apply_channel(subsystem, thermal_decay_channel(tau, noise_.t1_cavity, noise_.n_bar_cavity, d));
        }
        tau = 0.0;
    }

    void active_noise(int mode, double tau, bool transmon_dephasing) {
        if (tau <= 0.0) {
            return;
        }
        double loss = 0;
        double gain = 0;
        double gamma = 0;
        if (mask_ & kDecay) {
            loss = (1.0 + noise_.n_bar_cavity) / noise_.t1_cavity;
            gain = noise_.n_bar_cavity / noise_.t1_cavity;
        }
        if (transmon_dephasing) {
            gamma = 1.0 / noise_.t1_transmon + 1.0 / noise_.t_phi_transmon;
        }
        if (loss + gain + gamma > 0.0) {
            rho_.apply_channel(mode, local_noise_channel(tau, loss, gain, gamma, rho_.local_dim()));
        }
    }

    DensityMatrix rho_;
    const NoiseParams &noise_;
    unsigned mask_;
    std::vector<double> pending_;
    double elapsed_ = 0;
};

}  // namespace

NoisyTrajectory run_noisy_trajectory(const CircuitConfig &config, const NoiseParams &noise, unsigned channel_mask, std::uint64_t trajectory_seed) {
    config.validate();
    noise.validate();
    auto basis = std::make_shared<const SectorBasis>(config.modes, config.photons);
    TrajectoryStreams streams(trajectory_seed);
    CircuitRealization realization = sample_realization(config, streams.circuit);
    PureState initial = config.init == InitKind::Checkerboard ? init_checkerboard(basis) : init_haar_pair(basis, streams.init).global;
    int d = noise.truncation > 0 ? noise.truncation : config.photons + 1;
    Simulator sim(DensityMatrix::from_pure(initial, d), noise, channel_mask);

    NoisyTrajectory out;
    for (const auto &layer : realization.scramble) {
        sim.layer(layer);
    }
    out.ancilla_entropy.push_back(sim.ancilla_entropy(config.entropy_base));
    sim.check_trace();
    int t = 1;
    for (const auto &layer : realization.monitored) {
        sim.layer(layer.gates);
        for (int site : layer.measured_sites) {
            NoisyOutcome o = sim.measure(site, config.measurement, streams.outcomes);
            out.flips += o.flipped ? 1 : 0;
            out.skipped_collapses += o.collapse_skipped ? 1 : 0;
            out.record.events.push_back(MeasurementEvent{t, site, config.measurement, o.outcome, o.probability});
        }
        out.ancilla_entropy.push_back(sim.ancilla_entropy(config.entropy_base));
        sim.check_trace();
        t++;
    }
    out.elapsed = sim.elapsed();
    return out;
}

NoiseEnsemble run_noise_ensemble(const CircuitConfig &config, const NoiseParams &noise, unsigned channel_mask, int n_realizations, int workers) {
    config.validate();
    noise.validate();
    if (n_realizations < 1) {
        throw ConfigError("ensemble.realizations", "must be at least 1");
    }
    auto basis = std::make_shared<const SectorBasis>(config.modes, config.photons);
    struct Pair {
        std::vector<double> noisy;
        std::vector<double> ideal;
        int skipped = 0;
    };
    auto results = map_indexed(static_cast<std::size_t>(n_realizations), workers, [&](std::size_t k) {
        std::uint64_t seed = mix_seed(config.seed, k);
        NoisyTrajectory noisy = run_noisy_trajectory(config, noise, channel_mask, seed);
        TrajectoryResult ideal = run_purification(config, basis, seed);
        return Pair{std::move(noisy.ancilla_entropy), std::move(ideal.ancilla_entropy), noisy.skipped_collapses};
    });

    NoiseEnsemble out;
    out.channel_mask = channel_mask;
    std::size_t steps = results.front().noisy.size();
    std::vector<double> a(results.size());
    std::vector<double> b(results.size());
    std::vector<double> diff(results.size());
    int n = static_cast<int>(results.size());
    for (std::size_t t = 0; t < steps; t++) {
        for (std::size_t k = 0; k < results.size(); k++) {
            a[k] = results[k].noisy[t];
            b[k] = results[k].ideal[t];
            diff[k] = a[k] - b[k];
        }
        auto [ma, sa] = mean_and_sem(a);
        auto [mb, sb] = mean_and_sem(b);
        auto [md, sd] = mean_and_sem(diff);
        int ti = static_cast<int>(t);
        out.noisy.push_back(EntropyRecord{config.modes, config.photons, config.p, ti, ma, sa, n, config.entropy_base});
        out.ideal.push_back(EntropyRecord{config.modes, config.photons, config.p, ti, mb, sb, n, config.entropy_base});
        out.residual.push_back(md);
        out.residual_sem.push_back(sd);
    }
    std::size_t window = std::min<std::size_t>(static_cast<std::size_t>(noise.residual_window), steps);
    for (std::size_t k = 0; k < results.size(); k++) {
        double s = 0;
        for (std::size_t t = steps - window; t < steps; t++) {
            s += results[k].noisy[t] - results[k].ideal[t];
        }
        diff[k] = s / static_cast<double>(window);
        out.skipped_collapses += results[k].skipped;
    }
    std::tie(out.residual_entropy, out.residual_entropy_sem) = mean_and_sem(diff);
    return out;
}

}  // namespace bosonmon::noise
