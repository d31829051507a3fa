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

#include "bosonmon/io.h"

#include <chrono>
#include <cstdio>
#include <ctime>
#include <istream>
#include <ostream>
#include <sstream>

#include "bosonmon/errors.h"
#include "json.hpp"

namespace bosonmon {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

std::string base_name(EntropyBase base) {
    return base == EntropyBase::Bits ? "bits" : "nats";
}

EntropyBase parse_base(const std::string &text) {
    if (text == "bits") {
        return EntropyBase::Bits;
    }
    if (text == "nats") {
        return EntropyBase::Nats;
    }
    throw DomainError("entropy base must be \"bits\" or \"nats\", got \"" + text + "\"");
}

namespace {

constexpr const char *kEntropyHeader = "L,Q,p,t,mean,sem,n_realizations,base";

void write_entropy_row(std::ostream &out, const EntropyRecord &r) {
    out << r.modes << ',' << r.photons << ',' << format_double(r.p) << ',' << r.t << ',' << format_double(r.mean) << ','
        << format_double(r.sem) << ',' << r.n_realizations << ',' << base_name(r.base);
}

std::vector<std::string> split(const std::string &line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) {
        out.push_back(field);
    }
    return out;
}

int to_int(const std::string &s, std::size_t line) {
    try {
        std::size_t used = 0;
        int v = std::stoi(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw DomainError("line " + std::to_string(line) + ": expected an integer, got \"" + s + "\"");
}

double to_double(const std::string &s, std::size_t line) {
    try {
        std::size_t used = 0;
        double v = std::stod(s, &used);
        if (used == s.size()) {
            return v;
        }
    } catch (const std::exception &) {
    }
    throw DomainError("line " + std::to_string(line) + ": expected a number, got \"" + s + "\"");
}

}  // namespace

void write_entropy_csv(std::ostream &out, const std::vector<EntropyRecord> &records) {
    out << kEntropyHeader << '\n';
    for (const auto &r : records) {
        write_entropy_row(out, r);
        out << '\n';
    }
}

std::vector<EntropyRecord> read_entropy_csv(std::istream &in) {
    std::vector<EntropyRecord> records;
    std::string line;
    std::size_t number = 0;
    bool header = false;
    while (std::getline(in, line)) {
        number++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty() || line[0] == '#') {
            continue;
        }
        if (!header) {
            // Extra trailing columns (as in noise output) are allowed.
            if (line.rfind(kEntropyHeader, 0) != 0) {
                throw DomainError("line " + std::to_string(number) + ": expected header " + kEntropyHeader);
            }
            header = true;
            continue;
        }
        std::vector<std::string> f = split(line);
        if (f.size() < 8) {
            throw DomainError("line " + std::to_string(number) + ": expected at least 8 fields");
        }
        EntropyRecord r;
        r.modes = to_int(f[0], number);
        r.photons = to_int(f[1], number);
        r.p = to_double(f[2], number);
        r.t = to_int(f[3], number);
        r.mean = to_double(f[4], number);
        r.sem = to_double(f[5], number);
        r.n_realizations = to_int(f[6], number);
        r.base = parse_base(f[7]);
        records.push_back(r);
    }
    if (!header) {
        throw DomainError("missing header " + std::string(kEntropyHeader));
    }
    return records;
}

void write_accuracy_csv(std::ostream &out, const std::vector<AccuracyPoint> &points) {
    out << "L,Q,p,accuracy,sem,n_trials\n";
    for (const auto &a : points) {
        out << a.modes << ',' << a.photons << ',' << format_double(a.p) << ',' << format_double(a.accuracy) << ','
            << format_double(a.sem) << ',' << a.n_trials << '\n';
    }
}

void write_noise_csv(std::ostream &out, const noise::NoiseEnsemble &ensemble) {
    out << kEntropyHeader << ",channel_mask,residual_entropy\n";
    for (std::size_t t = 0; t < ensemble.noisy.size(); t++) {
        write_entropy_row(out, ensemble.noisy[t]);
        out << ',' << ensemble.channel_mask << ',' << format_double(ensemble.residual[t]) << '\n';
    }
}

void write_crossing_csv(std::ostream &out, const std::vector<CrossingRow> &rows) {
    out << "L_small,L_large,t_small,t_large,p_star,sigma,n_roots\n";
    for (const auto &r : rows) {
        out << r.modes_small << ',' << r.modes_large << ',' << r.t_small << ',' << r.t_large << ',' << format_double(r.crossing.p)
            << ',' << format_double(r.crossing.sigma) << ',' << r.n_roots << '\n';
    }
}

void write_collapse_csv(std::ostream &out, const CollapseTable &table) {
    out << "# p_selected=" << format_double(table.p_selected) << '\n';
    out << "# z=" << format_double(table.z) << '\n';
    out << "L,p,t,x,mean,sem\n";
    for (const auto &r : table.rows) {
        out << r.modes << ',' << format_double(r.p) << ',' << r.t << ',' << format_double(r.x) << ',' << format_double(r.mean) << ','
            << format_double(r.sem) << '\n';
    }
}

std::string fnv1a_hex(const std::string &bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string utc_timestamp() {
    std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(std::ostream &out, const RunManifest &manifest) {
    nlohmann::ordered_json j;
    j["command"] = manifest.command;
    j["config_hash"] = manifest.config_hash;
    j["seed"] = manifest.seed;
    j["workers"] = manifest.workers;
    j["version"] = manifest.version;
    j["started"] = manifest.started;
    j["finished"] = manifest.finished;
    j["outputs"] = manifest.outputs;
    out << j.dump(2) << '\n';
}

}  // namespace bosonmon
