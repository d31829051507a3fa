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

#ifndef BOSONMON_IO_H
#define BOSONMON_IO_H

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bosonmon/analysis.h"
#include "bosonmon/noise.h"
#include "bosonmon/protocols.h"

namespace bosonmon {

inline constexpr const char *kVersion = "0.1.0";

/// Decimal form with 17 significant digits, which round-trips every finite double.
std::string format_double(double value);

std::string base_name(EntropyBase base);
/// Accepts "bits" or "nats". Throws DomainError.
EntropyBase parse_base(const std::string &text);

/// Header: L,Q,p,t,mean,sem,n_realizations,base
void write_entropy_csv(std::ostream &out, const std::vector<EntropyRecord> &records);
/// Reads the format above, skipping blank lines and lines starting with '#'.
/// Throws DomainError on a malformed header or row.
std::vector<EntropyRecord> read_entropy_csv(std::istream &in);

/// Header: L,Q,p,accuracy,sem,n_trials
void write_accuracy_csv(std::ostream &out, const std::vector<AccuracyPoint> &points);

/// Noisy curve rows with two extra columns, channel_mask and residual_entropy (per t).
void write_noise_csv(std::ostream &out, const noise::NoiseEnsemble &ensemble);

/// Header: L_small,L_large,t_small,t_large,p_star,sigma,n_roots
struct CrossingRow {
    int modes_small = 0;
    int modes_large = 0;
    int t_small = 0;
    int t_large = 0;
    Crossing crossing;
    int n_roots = 0;
};
void write_crossing_csv(std::ostream &out, const std::vector<CrossingRow> &rows);

/// "# p_selected=<p>" and "# z=<z>" lines, then L,p,t,x,mean,sem.
void write_collapse_csv(std::ostream &out, const CollapseTable &table);

/// 64-bit FNV-1a, hex encoded.
std::string fnv1a_hex(const std::string &bytes);

struct RunManifest {
    std::string command;
    std::string config_hash;
    std::uint64_t seed = 0;
    int workers = 1;
    std::string version = kVersion;
    std::string started;
    std::string finished;
    std::vector<std::string> outputs;
};

/// UTC timestamp, ISO 8601 with seconds.
std::string utc_timestamp();
void write_manifest(std::ostream &out, const RunManifest &manifest);

}  // namespace bosonmon

#endif
