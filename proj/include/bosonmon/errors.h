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

#ifndef BOSONMON_ERRORS_H
#define BOSONMON_ERRORS_H

#include <stdexcept>
#include <string>

namespace bosonmon {

/// Argument outside the domain of an operation (bad site, wrong charge, index out of range).
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested Hilbert space exceeds the configured amplitude cap.
struct CapacityError : std::length_error {
    using std::length_error::length_error;
};

/// A forced measurement outcome has (numerically) zero Born probability.
struct ZeroProbabilityError : std::runtime_error {
    explicit ZeroProbabilityError(double probability)
        : std::runtime_error("forced outcome has zero Born probability (" + std::to_string(probability) + ")"),
          probability(probability) {
    }
    double probability;
};

/// Invalid experiment configuration. `key` is the dotted path of the offending field.
struct ConfigError : std::invalid_argument {
    ConfigError(std::string key, const std::string &message)
        : std::invalid_argument(key + ": " + message), key(std::move(key)) {
    }
    std::string key;
};

/// An idealized readout model produced a non-deterministic step.
struct ModelInconsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Crossing search found no sign change between two curves.
struct NoCrossingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace bosonmon

#endif
