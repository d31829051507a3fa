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

// Brute-force reference implementations shared by the unit tests and the
// acceptance binary. Everything here works on dense matrices over the full
// sector and never calls the block or group machinery it is checking.

#ifndef BOSONMON_TESTS_ORACLE_H
#define BOSONMON_TESTS_ORACLE_H

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <functional>
#include <memory>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>
#include <vector>

#include "bosonmon/errors.h"
#include "bosonmon/gates.h"
#include "bosonmon/measurement.h"
#include "bosonmon/protocols.h"
#include "bosonmon/sector_basis.h"

namespace oracle {

using bosonmon::Complex;

/// Every occupation vector of `modes` modes with total `photons`, generated by
/// scanning all of {Q..0}^L in descending lexicographic order.
inline std::vector<std::vector<int>> enumerate_sector(int modes, int photons) {
    std::vector<std::vector<int>> out;
    std::vector<int> occ(static_cast<std::size_t>(modes), 0);
    std::function<void(int, int)> rec = [&](int mode, int used) {
        if (mode == modes) {
            if (used == photons) {
                out.push_back(occ);
            }
            return;
        }
        for (int n = photons; n >= 0; n--) {
            occ[mode] = n;
            rec(mode + 1, used + n);
        }
    };
    rec(0, 0);
    return out;
}

/// theta (e^{i phi} a_site^dag a_{site+1} + h.c.) on the whole sector.
inline Eigen::MatrixXcd hopping_hamiltonian(const bosonmon::SectorBasis &basis, int site, double theta, double phi) {
    Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < basis.size(); k++) {
        std::vector<int> occ = basis.unrank(k);
        int nb = occ[site + 1];
        int na = occ[site];
        if (nb == 0) {
            continue;
        }
        // a^dag b |.., na, nb, ..> = sqrt((na + 1) nb) |.., na + 1, nb - 1, ..>
        std::vector<int> moved = occ;
        moved[site]++;
        moved[site + 1]--;
        std::size_t j = basis.rank(moved);
        Complex amp = theta * std::polar(1.0, phi) * std::sqrt(static_cast<double>((na + 1) * nb));
        h(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) += amp;
        h(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(j)) += std::conj(amp);
    }
    return h;
}

inline Eigen::MatrixXcd beam_splitter_unitary(const bosonmon::SectorBasis &basis, int site, double theta, double phi) {
    Eigen::MatrixXcd ih = Complex(0, 1) * hopping_hamiltonian(basis, site, theta, phi);
    return ih.exp();
}

inline Eigen::MatrixXcd snap_unitary(const bosonmon::SectorBasis &basis, int site, double strength) {
    Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(n, n);
    for (std::size_t k = 0; k < basis.size(); k++) {
        int occ = basis.unrank(k)[site];
        u(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = std::polar(1.0, -strength * occ * occ);
    }
    return u;
}

/// Dense unitary of one layer, following the documented gate order.
inline Eigen::MatrixXcd layer_unitary(const bosonmon::SectorBasis &basis, const bosonmon::LayerSchedule &layer) {
    Eigen::Index n = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(n, n);
    if (layer.placement == bosonmon::SnapPlacement::AllModes) {
        for (const auto &g : layer.gates) {
            u = beam_splitter_unitary(basis, g.site, g.theta, g.phi) * u;
        }
        for (const auto &s : layer.snaps) {
            u = snap_unitary(basis, s.site, s.strength) * u;
        }
        return u;
    }
    for (const auto &g : layer.gates) {
        u = beam_splitter_unitary(basis, g.site, g.theta, g.phi) * u;
        for (const auto &s : layer.snaps) {
            if (s.site == g.site || s.site == g.site + 1) {
                u = snap_unitary(basis, s.site, s.strength) * u;
            }
        }
    }
    return u;
}

/// Amplitudes as a (sector dim) x (ancilla levels) matrix.
inline Eigen::MatrixXcd as_matrix(const bosonmon::PureState &state) {
    Eigen::Index n = static_cast<Eigen::Index>(state.basis().size());
    Eigen::MatrixXcd m(n, state.ancilla_levels());
    for (Eigen::Index k = 0; k < n; k++) {
        for (int a = 0; a < state.ancilla_levels(); a++) {
            m(k, a) = state.at(static_cast<std::size_t>(k), a);
        }
    }
    return m;
}

inline double max_abs_diff(const bosonmon::PureState &state, const Eigen::MatrixXcd &expected) {
    return (as_matrix(state) - expected).cwiseAbs().maxCoeff();
}

inline bosonmon::PureState random_state(std::shared_ptr<const bosonmon::SectorBasis> basis, bool with_ancilla, std::mt19937_64 &rng) {
    std::normal_distribution<double> normal;
    bosonmon::PureState state(basis, with_ancilla);
    for (auto &a : state.amplitudes()) {
        a = Complex(normal(rng), normal(rng));
    }
    state.normalize();
    return state;
}

/// Entropy in bits of a Hermitian matrix with unit trace, from its full spectrum.
inline double entropy_bits(const Eigen::MatrixXcd &rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
    double s = 0;
    for (Eigen::Index i = 0; i < eig.eigenvalues().size(); i++) {
        double v = eig.eigenvalues()(i);
        if (v > 1e-14) {
            s -= v * std::log2(v);
        }
    }
    return s;
}

inline int outcome_label(int n, const bosonmon::MeasurementKind &kind) {
    return kind.is_number() ? n : n % kind.modulus();
}

/// Exact Born-weighted statistics of a fixed monitored circuit, by walking the
/// full tree of measurement outcomes with dense projectors.
struct ExactTree {
    double total_probability = 0;
    double mean_final_entropy = 0;  ///< sum over records of p_m S_R[m], bits
    int leaves = 0;
};

inline ExactTree exact_tree(const bosonmon::SectorBasis &basis, const bosonmon::CircuitRealization &realization, const bosonmon::MeasurementKind &kind, const Eigen::MatrixXcd &initial) {
    std::vector<Eigen::MatrixXcd> layers;
    for (const auto &layer : realization.scramble) {
        layers.push_back(layer_unitary(basis, layer));
    }
    Eigen::MatrixXcd psi = initial;
    for (const auto &u : layers) {
        psi = u * psi;
    }
    std::vector<Eigen::MatrixXcd> monitored;
    for (const auto &layer : realization.monitored) {
        monitored.push_back(layer_unitary(basis, layer.gates));
    }
    ExactTree out;
    int outcomes = kind.num_outcomes(basis.photons());
    // psi is unnormalized: its squared norm is the probability of the record so far.
    std::function<void(std::size_t, std::size_t, Eigen::MatrixXcd)> walk = [&](std::size_t layer, std::size_t next, Eigen::MatrixXcd v) {
        if (layer == realization.monitored.size()) {
            double w = v.squaredNorm();
            if (w <= 0) {
                return;
            }
            Eigen::MatrixXcd rho = v.adjoint() * v / w;
            out.total_probability += w;
            out.mean_final_entropy += w * entropy_bits(rho.transpose());
            out.leaves++;
            return;
        }
        if (next == 0) {
            v = monitored[layer] * v;
        }
        const auto &sites = realization.monitored[layer].measured_sites;
        if (next == sites.size()) {
            walk(layer + 1, 0, v);
            return;
        }
        int site = sites[next];
        for (int o = 0; o < outcomes; o++) {
            Eigen::MatrixXcd projected = v;
            for (std::size_t k = 0; k < basis.size(); k++) {
                if (outcome_label(basis.unrank(k)[site], kind) != o) {
                    projected.row(static_cast<Eigen::Index>(k)).setZero();
                }
            }
            if (projected.squaredNorm() < 1e-300) {
                continue;
            }
            walk(layer, next + 1, projected);
        }
    };
    walk(0, 0, psi);
    return out;
}

/// Every record of a fixed circuit with nonzero probability, found by chaining
/// force_and_collapse over all outcome combinations. Each entry pairs the
/// outcome sequence with the product of the returned Born probabilities.
struct ForcedLeaf {
    std::vector<int> outcomes;
    double probability = 0;
    bosonmon::PureState state;
};

inline std::vector<ForcedLeaf> forced_records(const bosonmon::CircuitRealization &realization, const bosonmon::MeasurementKind &kind, bosonmon::PureState initial) {
    for (const auto &layer : realization.scramble) {
        bosonmon::apply_layer(initial, layer);
    }
    std::vector<ForcedLeaf> leaves;
    int outcomes = kind.num_outcomes(initial.basis().photons());
    std::vector<int> path;
    std::function<void(std::size_t, std::size_t, bosonmon::PureState, double)> walk = [&](std::size_t layer, std::size_t next, bosonmon::PureState state, double prob) {
        if (layer == realization.monitored.size()) {
            leaves.push_back(ForcedLeaf{path, prob, state});
            return;
        }
        if (next == 0) {
            bosonmon::apply_layer(state, realization.monitored[layer].gates);
        }
        const auto &sites = realization.monitored[layer].measured_sites;
        if (next == sites.size()) {
            walk(layer + 1, 0, state, prob);
            return;
        }
        for (int o = 0; o < outcomes; o++) {
            bosonmon::PureState copy = state;
            double p;
            try {
                p = bosonmon::force_and_collapse(copy, sites[next], kind, o);
            } catch (const bosonmon::ZeroProbabilityError &) {
                continue;
            }
            path.push_back(o);
            walk(layer, next + 1, copy, prob * p);
            path.pop_back();
        }
    };
    walk(0, 0, initial, 1.0);
    return leaves;
}

}  // namespace oracle

#endif
