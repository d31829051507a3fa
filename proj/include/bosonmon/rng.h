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

#ifndef BOSONMON_RNG_H
#define BOSONMON_RNG_H

#include <cstdint>
#include <random>

namespace bosonmon {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer. Bijective on 64-bit words.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Seed of realization `k` in an ensemble with master seed `seed`:
///     mix(seed, k) = splitmix64(splitmix64(seed) ^ (k * 0xD1B54A32D192ED03)).
/// Depends only on (seed, k), never on worker count or scheduling order.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t k) {
    return splitmix64(splitmix64(seed) ^ (k * 0xD1B54A32D192ED03ULL));
}

/// Independent random streams used by a single trajectory. Gate angles and the
/// measurement schedule come from `circuit`, Born sampling from `outcomes`, and
/// random initial states / labels from `init`. Keeping them apart means two runs
/// that differ only in their measurement outcomes see the same circuit.
struct TrajectoryStreams {
    explicit TrajectoryStreams(std::uint64_t trajectory_seed)
        : circuit(mix_seed(trajectory_seed, 1)), outcomes(mix_seed(trajectory_seed, 2)), init(mix_seed(trajectory_seed, 3)) {
    }
    Rng circuit;
    Rng outcomes;
    Rng init;
};

/// Uniform double in [0, 1) from the top 53 bits of one draw.
inline double uniform01(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace bosonmon

#endif
