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

#ifndef BOSONMON_MEASUREMENT_H
#define BOSONMON_MEASUREMENT_H

#include <iosfwd>
#include <string>
#include <vector>

#include "bosonmon/rng.h"
#include "bosonmon/sector_basis.h"

namespace bosonmon {

/// Photon number of one mode modulo `modulus`; modulus 0 means the full number.
/// Parity is modulus 2 with outcome 0 = even, 1 = odd.
class MeasurementKind {
   public:
    static MeasurementKind parity() {
        return MeasurementKind(2);
    }
    /// Throws DomainError for n < 2.
    static MeasurementKind mod(int n);
    static MeasurementKind number() {
        return MeasurementKind(0);
    }
    /// Parses "parity", "number" or "mod<n>" (e.g. "mod3"). Throws DomainError.
    static MeasurementKind parse(const std::string &text);

    bool is_number() const {
        return modulus_ == 0;
    }
    int modulus() const {
        return modulus_;
    }
    /// Outcome label of a mode holding n photons.
    int outcome_of(int n) const {
        return modulus_ == 0 ? n : n % modulus_;
    }
    /// Number of outcome labels for a sector with `photons` photons.
    int num_outcomes(int photons) const {
        return modulus_ == 0 ? photons + 1 : modulus_;
    }
    std::string name() const;

    bool operator==(const MeasurementKind &) const = default;

   private:
    explicit MeasurementKind(int modulus) : modulus_(modulus) {
    }
    int modulus_;
};

struct MeasurementEvent {
    int layer;
    int site;
    MeasurementKind kind;
    int outcome;
    double born_probability;
};

/// Ordered measurement events of one trajectory.
struct MeasurementRecord {
    std::vector<MeasurementEvent> events;

    /// Sum of log Born probabilities, i.e. log p_m.
    double log_probability() const;
    double probability() const;
};

/// P(outcome) for every outcome label. Sums to 1 for a normalized state.
std::vector<double> outcome_distribution(const PureState &state, int site, const MeasurementKind &kind);

/// Samples an outcome by the Born rule, projects and renormalizes. Zero-weight
/// outcomes are never returned.
MeasurementEvent sample_and_collapse(PureState &state, int site, const MeasurementKind &kind, Rng &rng, int layer = 0);

/// Projects onto `outcome`, renormalizes, returns its Born probability. Throws
/// ZeroProbabilityError when that probability is below 1e-14 (state left unchanged).
double force_and_collapse(PureState &state, int site, const MeasurementKind &kind, int outcome);

/// One JSON object per line: {"layer":..,"site":..,"kind":..,"outcome":..,"born_probability":..}.
void write_record_jsonl(std::ostream &out, const MeasurementRecord &record);
MeasurementRecord read_record_jsonl(std::istream &in);

}  // namespace bosonmon

#endif
