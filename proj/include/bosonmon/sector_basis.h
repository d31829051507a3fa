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

#ifndef BOSONMON_SECTOR_BASIS_H
#define BOSONMON_SECTOR_BASIS_H

#include <complex>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace bosonmon {

using Complex = std::complex<double>;

/// Photons per mode, mode 0 first.
using OccupationVector = std::vector<int>;

/// Binomial coefficient C(n, k) for 0 <= n < 64 from a precomputed table; 0 when k < 0 or k > n.
std::uint64_t binomial(int n, int k);

/// Number of ways to place `photons` bosons in `modes` modes, C(photons + modes - 1, photons).
/// Saturates at UINT64_MAX when the value does not fit.
std::uint64_t sector_dimension(int modes, int photons);

/// Rank of a composition of `total` into occ.size() parts in the basis ordering
/// (lexicographic, first part most significant, larger occupations first).
/// No validation; callers guarantee sum(occ) == total.
std::uint64_t composition_rank(std::span<const std::uint8_t> occ, int total);

/// The fixed-photon-number sector of `modes` bosonic modes holding `photons` photons.
///
/// States are ordered lexicographically on their occupation vectors, mode 0 most
/// significant, descending occupation first: (Q,0,..,0) has rank 0 and (0,..,0,Q)
/// has rank size()-1. Ranking uses cumulative binomial counts, so no hash map is
/// needed. Immutable after construction and safe to share between threads.
class SectorBasis {
   public:
    static constexpr std::size_t kDefaultAmplitudeCap = 20'000'000;

    /// Beam-splitter groups for the mode pair (site, site+1). Group g lists the
    /// ranks of |s,0>,|s-1,1>,..,|0,s> (pair modes only, everything else fixed) in
    /// members[offsets[g] .. offsets[g+1]). Groups with s = 0 are omitted.
    struct PairGroups {
        std::vector<std::uint32_t> members;
        std::vector<std::uint32_t> offsets;
        std::vector<std::uint8_t> totals;
        std::size_t num_groups() const {
            return totals.size();
        }
    };

    /// Throws DomainError for modes < 1 or photons < 0, CapacityError when
    /// 2 * dimension exceeds `amplitude_cap`.
    SectorBasis(int modes, int photons, std::size_t amplitude_cap = kDefaultAmplitudeCap);

    int modes() const {
        return modes_;
    }
    int photons() const {
        return photons_;
    }
    std::size_t size() const {
        return size_;
    }

    int occupation(std::size_t k, int mode) const {
        return occupations_[k * static_cast<std::size_t>(modes_) + static_cast<std::size_t>(mode)];
    }
    std::span<const std::uint8_t> occupations(std::size_t k) const {
        return {occupations_.data() + k * static_cast<std::size_t>(modes_), static_cast<std::size_t>(modes_)};
    }

    /// Throws DomainError if `occ` has the wrong length, a negative entry, or the wrong total.
    std::size_t rank(std::span<const int> occ) const;
    /// Throws DomainError if k >= size().
    OccupationVector unrank(std::size_t k) const;

    /// Throws DomainError unless 0 <= site < modes() - 1.
    const PairGroups &pair_groups(int site) const;

   private:
    int modes_;
    int photons_;
    std::size_t size_;
    std::vector<std::uint8_t> occupations_;
    std::vector<PairGroups> pair_groups_;
};

/// Complex amplitudes over a SectorBasis, optionally tensored with a two-level
/// reference ancilla. The ancilla is the fastest-varying index: amplitude of
/// (basis state k, ancilla a) lives at k * ancilla_levels() + a.
class PureState {
   public:
    /// Zero vector; callers fill it and normalize.
    PureState(std::shared_ptr<const SectorBasis> basis, bool with_ancilla);
    /// Takes ownership of `amplitudes`; throws DomainError on size mismatch or a norm
    /// away from 1 by more than 1e-10.
    PureState(std::shared_ptr<const SectorBasis> basis, bool with_ancilla, std::vector<Complex> amplitudes);

    /// Single Fock basis state (with the ancilla in `ancilla_bit` if present).
    static PureState fock(std::shared_ptr<const SectorBasis> basis, const OccupationVector &occ, bool with_ancilla, int ancilla_bit = 0);

    const SectorBasis &basis() const {
        return *basis_;
    }
    const std::shared_ptr<const SectorBasis> &basis_ptr() const {
        return basis_;
    }
    bool has_ancilla() const {
        return ancilla_levels_ == 2;
    }
    int ancilla_levels() const {
        return ancilla_levels_;
    }

    std::span<Complex> amplitudes() {
        return amplitudes_;
    }
    std::span<const Complex> amplitudes() const {
        return amplitudes_;
    }
    Complex &at(std::size_t k, int ancilla = 0) {
        return amplitudes_[k * static_cast<std::size_t>(ancilla_levels_) + static_cast<std::size_t>(ancilla)];
    }
    const Complex &at(std::size_t k, int ancilla = 0) const {
        return amplitudes_[k * static_cast<std::size_t>(ancilla_levels_) + static_cast<std::size_t>(ancilla)];
    }

    double norm() const;
    /// Divides by the current norm. Throws DomainError if the norm is below 1e-300.
    void normalize();

   private:
    std::shared_ptr<const SectorBasis> basis_;
    int ancilla_levels_;
    std::vector<Complex> amplitudes_;
};

}  // namespace bosonmon

#endif
