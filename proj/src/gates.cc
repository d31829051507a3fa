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

#include "bosonmon/gates.h"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "bosonmon/errors.h"

namespace bosonmon {

BlockMatrix two_mode_block(int s, double theta, double phi) {
    if (s < 0) {
        throw DomainError("pair photon number must be non-negative");
    }
    int n = s + 1;
    // H = theta * D T D^dag with T real symmetric tridiagonal, T[j-1][j] = sqrt((s-j+1) j),
    // and D = diag(e^{-i j phi}) carrying the drive phase.
    Eigen::MatrixXd hopping = Eigen::MatrixXd::Zero(n, n);
    for (int j = 1; j <= s; j++) {
        double c = std::sqrt(static_cast<double>((s - j + 1) * j));
        hopping(j - 1, j) = c;
        hopping(j, j - 1) = c;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(hopping);
    const Eigen::MatrixXd &v = eig.eigenvectors();
    Eigen::VectorXcd phases(n);
    for (int k = 0; k < n; k++) {
        phases(k) = std::polar(1.0, theta * eig.eigenvalues()(k));
    }
    BlockMatrix block = v.cast<Complex>() * phases.asDiagonal() * v.transpose().cast<Complex>();
    if (phi != 0.0) {
        for (int a = 0; a < n; a++) {
            for (int b = 0; b < n; b++) {
                block(a, b) *= std::polar(1.0, -(a - b) * phi);
            }
        }
    }
    return block;
}

namespace {

std::vector<BlockMatrix> pair_blocks(int q, const BeamSplitterSpec &gate) {
    std::vector<BlockMatrix> blocks(static_cast<std::size_t>(q + 1));
    for (int s = 1; s <= q; s++) {
        blocks[s] = two_mode_block(s, gate.theta, gate.phi);
    }
    return blocks;
}

void apply_pair_blocks(PureState &state, int site, const std::vector<BlockMatrix> &blocks) {
    const SectorBasis::PairGroups &groups = state.basis().pair_groups(site);
    int levels = state.ancilla_levels();
    std::span<Complex> amps = state.amplitudes();
    std::array<Complex, 256> in;
    std::array<Complex, 256> out;
    for (std::size_t g = 0; g < groups.num_groups(); g++) {
        int s = groups.totals[g];
        int n = s + 1;
        const std::uint32_t *members = groups.members.data() + groups.offsets[g];
        const BlockMatrix &block = blocks[s];
        for (int a = 0; a < levels; a++) {
            for (int j = 0; j < n; j++) {
                in[j] = amps[static_cast<std::size_t>(members[j]) * levels + a];
            }
            for (int i = 0; i < n; i++) {
                Complex acc = 0;
                for (int j = 0; j < n; j++) {
                    acc += block(i, j) * in[j];
                }
                out[i] = acc;
            }
            for (int j = 0; j < n; j++) {
                amps[static_cast<std::size_t>(members[j]) * levels + a] = out[j];
            }
        }
    }
}

// The two SNAPs that follow a brick gate are diagonal in the pair basis, so they
// fold into the block rows: row j (|s-j, j>) picks up e^{-iU_l (s-j)^2 - iU_r j^2}.
void apply_beam_splitter_and_snaps(PureState &state, const BeamSplitterSpec &gate, double left, double right) {
    std::vector<BlockMatrix> blocks = pair_blocks(state.basis().photons(), gate);
    for (int s = 1; s < static_cast<int>(blocks.size()); s++) {
        for (int j = 0; j <= s; j++) {
            blocks[s].row(j) *= std::polar(1.0, -left * (s - j) * (s - j) - right * j * j);
        }
    }
    apply_pair_blocks(state, gate.site, blocks);
}

}  // namespace

void apply_beam_splitter(PureState &state, const BeamSplitterSpec &gate) {
    const SectorBasis &basis = state.basis();
    basis.pair_groups(gate.site);
    apply_pair_blocks(state, gate.site, pair_blocks(basis.photons(), gate));
}

void apply_snap(PureState &state, const SnapSpec &gate) {
    const SectorBasis &basis = state.basis();
    if (gate.site < 0 || gate.site >= basis.modes()) {
        throw DomainError("SNAP site " + std::to_string(gate.site) + " out of range for " + std::to_string(basis.modes()) + " modes");
    }
    if (gate.strength == 0.0) {
        return;
    }
    int q = basis.photons();
    std::vector<Complex> phase(static_cast<std::size_t>(q + 1));
    for (int n = 0; n <= q; n++) {
        phase[n] = std::polar(1.0, -gate.strength * n * n);
    }
    int levels = state.ancilla_levels();
    std::span<Complex> amps = state.amplitudes();
    for (std::size_t k = 0; k < basis.size(); k++) {
        int n = basis.occupation(k, gate.site);
        if (n == 0) {
            continue;
        }
        for (int a = 0; a < levels; a++) {
            amps[k * levels + a] *= phase[n];
        }
    }
}

void apply_layer(PureState &state, const LayerSchedule &layer) {
    if (layer.placement == SnapPlacement::AllModes) {
        for (const auto &g : layer.gates) {
            apply_beam_splitter(state, g);
        }
        for (const auto &s : layer.snaps) {
            apply_snap(state, s);
        }
        return;
    }
    // Brick placement: snaps are stored two per gate, in gate order.
    std::size_t next_snap = 0;
    for (const auto &g : layer.gates) {
        if (next_snap + 1 < layer.snaps.size() && layer.snaps[next_snap].site == g.site &&
            layer.snaps[next_snap + 1].site == g.site + 1) {
            apply_beam_splitter_and_snaps(state, g, layer.snaps[next_snap].strength, layer.snaps[next_snap + 1].strength);
            next_snap += 2;
            continue;
        }
        apply_beam_splitter(state, g);
        while (next_snap < layer.snaps.size() &&
               (layer.snaps[next_snap].site == g.site || layer.snaps[next_snap].site == g.site + 1)) {
            apply_snap(state, layer.snaps[next_snap]);
            next_snap++;
        }
    }
    for (; next_snap < layer.snaps.size(); next_snap++) {
        apply_snap(state, layer.snaps[next_snap]);
    }
}

std::vector<int> brick_sites(int layer_index, int modes) {
    std::vector<int> sites;
    int first = (layer_index % 2 != 0) ? 0 : 1;
    for (int s = first; s + 1 < modes; s += 2) {
        sites.push_back(s);
    }
    return sites;
}

LayerSchedule sample_layer(Rng &rng, int layer_index, int modes, GateMode gate_mode, double strength, bool with_snap, SnapPlacement placement) {
    if (modes < 2) {
        throw DomainError("a brick layer needs at least two modes");
    }
    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    LayerSchedule layer;
    layer.layer_index = layer_index;
    layer.gate_mode = gate_mode;
    layer.placement = placement;
    for (int site : brick_sites(layer_index, modes)) {
        double theta = kTwoPi * uniform01(rng);
        double phi = gate_mode == GateMode::BSRP ? kTwoPi * uniform01(rng) : 0.0;
        layer.gates.push_back({site, theta, phi});
        if (with_snap && placement == SnapPlacement::Brick) {
            layer.snaps.push_back({site, strength});
            layer.snaps.push_back({site + 1, strength});
        }
    }
    if (with_snap && placement == SnapPlacement::AllModes) {
        for (int site = 0; site < modes; site++) {
            layer.snaps.push_back({site, strength});
        }
    }
    return layer;
}

}  // namespace bosonmon
