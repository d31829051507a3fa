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

#include "bosonmon/sector_basis.h"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bosonmon/errors.h"

namespace bosonmon {

namespace {

constexpr int kTableSize = 64;

struct BinomialTable {
    std::array<std::array<std::uint64_t, kTableSize>, kTableSize> c{};
    constexpr BinomialTable() {
        for (int n = 0; n < kTableSize; n++) {
            c[n][0] = 1;
            for (int k = 1; k <= n; k++) {
                c[n][k] = c[n - 1][k - 1] + (k < n ? c[n - 1][k] : 0);
            }
        }
    }
};

constexpr BinomialTable kBinomials{};

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) {
        return 0;
    }
    if (n >= kTableSize) {
        throw CapacityError("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") outside table");
    }
    return kBinomials.c[n][k];
}

std::uint64_t sector_dimension(int modes, int photons) {
    if (modes < 1 || photons < 0) {
        return 0;
    }
    // C(Q+L-1, Q) = prod_{i=1..Q} (L-1+i)/i, exact at every step.
    unsigned __int128 acc = 1;
    for (int i = 1; i <= photons; i++) {
        acc = acc * static_cast<unsigned>(modes - 1 + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max()) {
            return std::numeric_limits<std::uint64_t>::max();
        }
    }
    return static_cast<std::uint64_t>(acc);
}

std::uint64_t composition_rank(std::span<const std::uint8_t> occ, int total) {
    std::uint64_t r = 0;
    int remaining = total;
    int n = static_cast<int>(occ.size());
    for (int i = 0; i + 1 < n; i++) {
        int after = n - 1 - i;
        int v = occ[i];
        // States sharing the prefix but with a larger value here come first.
        if (remaining > v) {
            r += kBinomials.c[remaining - v - 1 + after][after];
        }
        remaining -= v;
    }
    return r;
}

SectorBasis::SectorBasis(int modes, int photons, std::size_t amplitude_cap) : modes_(modes), photons_(photons), size_(0) {
    if (modes < 1) {
        throw DomainError("sector basis needs at least one mode, got " + std::to_string(modes));
    }
    if (photons < 0) {
        throw DomainError("photon number must be non-negative, got " + std::to_string(photons));
    }
    if (photons > 255 || modes + photons >= kTableSize) {
        throw CapacityError("sector (L=" + std::to_string(modes) + ", Q=" + std::to_string(photons) + ") is too large");
    }
    std::uint64_t dim = sector_dimension(modes, photons);
    if (dim > amplitude_cap / 2) {
        throw CapacityError(
            "sector (L=" + std::to_string(modes) + ", Q=" + std::to_string(photons) + ") has dimension " + std::to_string(dim) +
            ", exceeding the amplitude cap " + std::to_string(amplitude_cap));
    }
    size_ = static_cast<std::size_t>(dim);
    occupations_.resize(size_ * static_cast<std::size_t>(modes_));

    // Enumerate in rank order: decrement the rightmost movable photon.
    std::vector<int> occ(static_cast<std::size_t>(modes_), 0);
    occ[0] = photons_;
    for (std::size_t k = 0; k < size_; k++) {
        for (int i = 0; i < modes_; i++) {
            occupations_[k * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(occ[i]);
        }
        if (k + 1 == size_) {
            break;
        }
        // Find rightmost i < L-1 with occ[i] > 0; move one photon to i+1 and
        // gather everything to the right of i into position i+1.
        int i = modes_ - 2;
        while (occ[i] == 0) {
            i--;
        }
        int tail = 0;
        for (int j = i + 1; j < modes_; j++) {
            tail += occ[j];
            occ[j] = 0;
        }
        occ[i]--;
        occ[i + 1] = tail + 1;
    }

    pair_groups_.resize(modes_ > 1 ? static_cast<std::size_t>(modes_ - 1) : 0);
    std::vector<int> work(static_cast<std::size_t>(modes_));
    for (int site = 0; site + 1 < modes_; site++) {
        PairGroups &pg = pair_groups_[site];
        pg.offsets.push_back(0);
        for (std::size_t k = 0; k < size_; k++) {
            int s = occupation(k, site);
            if (occupation(k, site + 1) != 0 || s == 0) {
                continue;
            }
            for (int i = 0; i < modes_; i++) {
                work[i] = occupation(k, i);
            }
            for (int j = 0; j <= s; j++) {
                work[site] = s - j;
                work[site + 1] = j;
                pg.members.push_back(static_cast<std::uint32_t>(rank(work)));
            }
            pg.totals.push_back(static_cast<std::uint8_t>(s));
            pg.offsets.push_back(static_cast<std::uint32_t>(pg.members.size()));
        }
    }
}

std::size_t SectorBasis::rank(std::span<const int> occ) const {
    if (static_cast<int>(occ.size()) != modes_) {
        throw DomainError("occupation vector has " + std::to_string(occ.size()) + " modes, basis has " + std::to_string(modes_));
    }
    int total = 0;
    for (int v : occ) {
        if (v < 0) {
            throw DomainError("negative occupation");
        }
        total += v;
    }
    if (total != photons_) {
        throw DomainError("occupation vector carries " + std::to_string(total) + " photons, sector has " + std::to_string(photons_));
    }
    std::uint64_t r = 0;
    int remaining = photons_;
    for (int i = 0; i + 1 < modes_; i++) {
        int after = modes_ - 1 - i;
        if (remaining > occ[i]) {
            r += kBinomials.c[remaining - occ[i] - 1 + after][after];
        }
        remaining -= occ[i];
    }
    return static_cast<std::size_t>(r);
}

OccupationVector SectorBasis::unrank(std::size_t k) const {
    if (k >= size_) {
        throw DomainError("index " + std::to_string(k) + " out of range for sector of size " + std::to_string(size_));
    }
    OccupationVector occ(static_cast<std::size_t>(modes_), 0);
    std::uint64_t rest = k;
    int remaining = photons_;
    for (int i = 0; i + 1 < modes_; i++) {
        int after = modes_ - 1 - i;
        for (int v = remaining; v >= 0; v--) {
            std::uint64_t count = kBinomials.c[remaining - v + after - 1][after - 1];
            if (rest < count) {
                occ[i] = v;
                break;
            }
            rest -= count;
        }
        remaining -= occ[i];
    }
    occ[modes_ - 1] = remaining;
    return occ;
}

const SectorBasis::PairGroups &SectorBasis::pair_groups(int site) const {
    if (site < 0 || site + 1 >= modes_) {
        throw DomainError("beam-splitter site " + std::to_string(site) + " out of range for " + std::to_string(modes_) + " modes");
    }
    return pair_groups_[site];
}

PureState::PureState(std::shared_ptr<const SectorBasis> basis, bool with_ancilla)
    : basis_(std::move(basis)), ancilla_levels_(with_ancilla ? 2 : 1) {
    amplitudes_.assign(basis_->size() * static_cast<std::size_t>(ancilla_levels_), Complex{0.0, 0.0});
}

PureState::PureState(std::shared_ptr<const SectorBasis> basis, bool with_ancilla, std::vector<Complex> amplitudes)
    : basis_(std::move(basis)), ancilla_levels_(with_ancilla ? 2 : 1), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != basis_->size() * static_cast<std::size_t>(ancilla_levels_)) {
        throw DomainError("amplitude vector has length " + std::to_string(amplitudes_.size()) + ", expected " +
                          std::to_string(basis_->size() * static_cast<std::size_t>(ancilla_levels_)));
    }
    if (std::abs(norm() - 1.0) > 1e-10) {
        throw DomainError("state is not normalized (norm " + std::to_string(norm()) + ")");
    }
}

PureState PureState::fock(std::shared_ptr<const SectorBasis> basis, const OccupationVector &occ, bool with_ancilla, int ancilla_bit) {
    PureState state(std::move(basis), with_ancilla);
    if (ancilla_bit < 0 || ancilla_bit >= state.ancilla_levels()) {
        throw DomainError("ancilla bit " + std::to_string(ancilla_bit) + " out of range");
    }
    state.at(state.basis().rank(occ), ancilla_bit) = 1.0;
    return state;
}

double PureState::norm() const {
    double s = 0;
    for (const Complex &a : amplitudes_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

void PureState::normalize() {
    double n = norm();
    if (n < 1e-300) {
        throw DomainError("cannot normalize a zero vector");
    }
    double inv = 1.0 / n;
    for (Complex &a : amplitudes_) {
        a *= inv;
    }
}

}  // namespace bosonmon
