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

#include "bosonmon/observables.h"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "bosonmon/errors.h"

namespace bosonmon {

double base_value(EntropyBase base) {
    return base == EntropyBase::Bits ? 2.0 : std::numbers::e;
}

double von_neumann_entropy(std::span<const double> eigenvalues, EntropyBase base) {
    double s = 0;
    for (double p : eigenvalues) {
        if (p > 1e-14) {
            s -= p * std::log(p);
        }
    }
    return base == EntropyBase::Bits ? s / std::numbers::ln2 : s;
}

Eigen::Matrix2cd ancilla_density_matrix(const PureState &state) {
    if (!state.has_ancilla()) {
        throw DomainError("state carries no reference ancilla");
    }
    std::span<const Complex> amps = state.amplitudes();
    Complex r00 = 0, r01 = 0, r11 = 0;
    for (std::size_t k = 0; k < state.basis().size(); k++) {
        const Complex &a0 = amps[2 * k];
        const Complex &a1 = amps[2 * k + 1];
        r00 += std::norm(a0);
        r11 += std::norm(a1);
        r01 += a0 * std::conj(a1);
    }
    Eigen::Matrix2cd rho;
    rho << r00, r01, std::conj(r01), r11;
    return rho;
}

double ancilla_entropy(const PureState &state, EntropyBase base) {
    Eigen::Matrix2cd rho = ancilla_density_matrix(state);
    // Closed-form eigenvalues of a 2x2 Hermitian matrix.
    double a = rho(0, 0).real();
    double d = rho(1, 1).real();
    double half_trace = 0.5 * (a + d);
    double radius = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho(0, 1)));
    double eig[2] = {half_trace + radius, half_trace - radius};
    return von_neumann_entropy(eig, base);
}

double bipartite_entropy(const PureState &state, int cut, EntropyBase base, AncillaSide side) {
    const SectorBasis &basis = state.basis();
    int modes = basis.modes();
    int q = basis.photons();
    if (cut < 1 || cut > modes - 1) {
        throw DomainError("cut " + std::to_string(cut) + " out of range [1, " + std::to_string(modes - 1) + "]");
    }
    int levels = state.ancilla_levels();
    int rows_per = side == AncillaSide::A ? levels : 1;
    int cols_per = side == AncillaSide::B ? levels : 1;

    // Schmidt matrix is block diagonal in the charge q_A held by modes 0..cut-1.
    std::vector<Eigen::MatrixXcd> blocks(static_cast<std::size_t>(q + 1));
    for (int qa = 0; qa <= q; qa++) {
        auto rows = static_cast<Eigen::Index>(sector_dimension(cut, qa)) * rows_per;
        auto cols = static_cast<Eigen::Index>(sector_dimension(modes - cut, q - qa)) * cols_per;
        blocks[qa] = Eigen::MatrixXcd::Zero(rows, cols);
    }
    std::span<const Complex> amps = state.amplitudes();
    for (std::size_t k = 0; k < basis.size(); k++) {
        std::span<const std::uint8_t> occ = basis.occupations(k);
        int qa = 0;
        for (int i = 0; i < cut; i++) {
            qa += occ[i];
        }
        auto ra = static_cast<Eigen::Index>(composition_rank(occ.subspan(0, static_cast<std::size_t>(cut)), qa));
        auto rb = static_cast<Eigen::Index>(composition_rank(occ.subspan(static_cast<std::size_t>(cut)), q - qa));
        for (int a = 0; a < levels; a++) {
            Eigen::Index r = ra * rows_per + (side == AncillaSide::A ? a : 0);
            Eigen::Index c = rb * cols_per + (side == AncillaSide::B ? a : 0);
            blocks[qa](r, c) = amps[k * levels + a];
        }
    }

    std::vector<double> spectrum;
    for (const auto &m : blocks) {
        if (m.size() == 0) {
            continue;
        }
        Eigen::MatrixXcd gram = m.rows() <= m.cols() ? Eigen::MatrixXcd(m * m.adjoint()) : Eigen::MatrixXcd(m.adjoint() * m);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gram, Eigen::EigenvaluesOnly);
        for (Eigen::Index i = 0; i < eig.eigenvalues().size(); i++) {
            spectrum.push_back(eig.eigenvalues()(i));
        }
    }
    return von_neumann_entropy(spectrum, base);
}

}  // namespace bosonmon
