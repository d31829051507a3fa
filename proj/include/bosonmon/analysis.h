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

#ifndef BOSONMON_ANALYSIS_H
#define BOSONMON_ANALYSIS_H

#include <vector>

#include "bosonmon/protocols.h"

namespace bosonmon {

/// S_R(p) at a fixed time for one system size.
struct Curve {
    int modes = 0;
    int t = 0;
    std::vector<double> p;
    std::vector<double> mean;
    std::vector<double> sem;
};

/// Extracts the curve of size `modes` at time `t` from a record table, sorted by p.
/// Throws DomainError if nothing matches.
Curve curve_at(const std::vector<EntropyRecord> &records, int modes, int t);

struct Crossing {
    double p = 0;
    double sigma = 0;
};

struct CrossingResult {
    std::vector<Crossing> roots;  ///< in increasing p
    bool multiple() const {
        return roots.size() > 1;
    }
    const Crossing &first() const {
        return roots.front();
    }
};

/// Roots of d(p) = S_large(p) - S_small(p) by linear interpolation between grid
/// points where d changes sign (an exact interior zero flanked by opposite signs
/// also counts). With Delta = d_i - d_{i+1} and spacing h, the uncertainty is
///     sigma^2 = (h d_{i+1} / Delta^2)^2 var_i + (h d_i / Delta^2)^2 var_{i+1},
/// var_i summing the squared SEMs of both curves at p_i.
/// Throws DomainError on mismatched or too-short grids and NoCrossingError
/// when d never changes sign.
CrossingResult crossing_estimate(const Curve &small, const Curve &large);

struct CollapseRow {
    int modes = 0;
    double p = 0;
    int t = 0;
    double x = 0;  ///< t / L^z
    double mean = 0;
    double sem = 0;
};

struct CollapseTable {
    double p_selected = 0;
    double z = 1;
    std::vector<CollapseRow> rows;
};

/// Rescales the time axis of the rows at the grid point nearest to p_c (ties go
/// to the smaller p). Throws DomainError for empty input or z <= 0.
CollapseTable collapse_transform(const std::vector<EntropyRecord> &records, double z, double p_c);

}  // namespace bosonmon

#endif
