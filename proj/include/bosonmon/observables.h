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

#ifndef BOSONMON_OBSERVABLES_H
#define BOSONMON_OBSERVABLES_H

#include <Eigen/Dense>
#include <span>

#include "bosonmon/sector_basis.h"

namespace bosonmon {

/// Logarithm base of an entropy. Stored as the number itself (2 or e) in CSV output.
enum class EntropyBase {
    Bits,  ///< log2
    Nats,  ///< ln
};

double base_value(EntropyBase base);

/// Which side of a bipartite cut the reference ancilla joins.
enum class AncillaSide {
    B,  ///< traced out together with modes cut..L-1
    A,  ///< kept with modes 0..cut-1
};

/// -sum p log p over the given eigenvalues; entries below 1e-14 contribute nothing.
double von_neumann_entropy(std::span<const double> eigenvalues, EntropyBase base);

/// 2x2 reduced density matrix of the ancilla. Throws DomainError if the state has none.
Eigen::Matrix2cd ancilla_density_matrix(const PureState &state);

double ancilla_entropy(const PureState &state, EntropyBase base = EntropyBase::Bits);

/// Entanglement entropy of modes 0..cut-1 against the rest. Computed from the
/// Schmidt spectrum, block by block in the charge held on the A side.
/// Throws DomainError unless 1 <= cut <= L-1.
double bipartite_entropy(const PureState &state, int cut, EntropyBase base = EntropyBase::Nats, AncillaSide side = AncillaSide::B);

}  // namespace bosonmon

#endif
