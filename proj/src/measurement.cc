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

#include "bosonmon/measurement.h"

#include <cmath>
#include <istream>
#include <ostream>

#include "bosonmon/errors.h"
#include "json.hpp"

namespace bosonmon {

namespace {

constexpr double kZeroProbability = 1e-14;

void check_site(const PureState &state, int site) {
    if (site < 0 || site >= state.basis().modes()) {
        throw DomainError("measurement site " + std::to_string(site) + " out of range");
    }
}

// Zeroes every amplitude whose outcome differs from `outcome` and rescales the rest.
void project(PureState &state, int site, const MeasurementKind &kind, int outcome, double probability) {
    const SectorBasis &basis = state.basis();
    int levels = state.ancilla_levels();
    std::span<Complex> amps = state.amplitudes();
    double scale = 1.0 / std::sqrt(probability);
    for (std::size_t k = 0; k < basis.size(); k++) {
        bool keep = kind.outcome_of(basis.occupation(k, site)) == outcome;
        for (int a = 0; a < levels; a++) {
            Complex &z = amps[k * levels + a];
            z = keep ? z * scale : Complex{0.0, 0.0};
        }
    }
}

}  // namespace

MeasurementKind MeasurementKind::mod(int n) {
    if (n < 2) {
        throw DomainError("mod-n measurement needs n >= 2, got " + std::to_string(n));
    }
    return MeasurementKind(n);
}

MeasurementKind MeasurementKind::parse(const std::string &text) {
    if (text == "parity") {
        return parity();
    }
    if (text == "number") {
        return number();
    }
    if (text.size() > 3 && text.compare(0, 3, "mod") == 0) {
        std::size_t used = 0;
        int n = 0;
        try {
            n = std::stoi(text.substr(3), &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == text.size() - 3) {
            return mod(n);
        }
    }
    throw DomainError("unknown measurement kind '" + text + "' (expected parity, number or mod<n>)");
}

std::string MeasurementKind::name() const {
    if (modulus_ == 0) {
        return "number";
    }
    if (modulus_ == 2) {
        return "parity";
    }
    return "mod" + std::to_string(modulus_);
}

double MeasurementRecord::log_probability() const {
    double s = 0;
    for (const auto &e : events) {
        s += std::log(e.born_probability);
    }
    return s;
}

double MeasurementRecord::probability() const {
    return std::exp(log_probability());
}

std::vector<double> outcome_distribution(const PureState &state, int site, const MeasurementKind &kind) {
    check_site(state, site);
    const SectorBasis &basis = state.basis();
    int levels = state.ancilla_levels();
    std::span<const Complex> amps = state.amplitudes();
    std::vector<double> probs(static_cast<std::size_t>(kind.num_outcomes(basis.photons())), 0.0);
    for (std::size_t k = 0; k < basis.size(); k++) {
        double w = 0;
        for (int a = 0; a < levels; a++) {
            w += std::norm(amps[k * levels + a]);
        }
        probs[kind.outcome_of(basis.occupation(k, site))] += w;
    }
    return probs;
}

MeasurementEvent sample_and_collapse(PureState &state, int site, const MeasurementKind &kind, Rng &rng, int layer) {
    std::vector<double> probs = outcome_distribution(state, site, kind);
    double u = uniform01(rng);
    int chosen = -1;
    double acc = 0;
    for (std::size_t o = 0; o < probs.size(); o++) {
        if (probs[o] < kZeroProbability) {
            continue;
        }
        chosen = static_cast<int>(o);
        acc += probs[o];
        if (u < acc) {
            break;
        }
    }
    if (chosen < 0) {
        throw ZeroProbabilityError(0.0);
    }
    double p = probs[chosen];
    project(state, site, kind, chosen, p);
    return MeasurementEvent{layer, site, kind, chosen, p};
}

double force_and_collapse(PureState &state, int site, const MeasurementKind &kind, int outcome) {
    std::vector<double> probs = outcome_distribution(state, site, kind);
    if (outcome < 0 || outcome >= static_cast<int>(probs.size())) {
        throw DomainError("outcome " + std::to_string(outcome) + " out of range for " + kind.name());
    }
    double p = probs[outcome];
    if (p < kZeroProbability) {
        throw ZeroProbabilityError(p);
    }
    project(state, site, kind, outcome, p);
    return p;
}

void write_record_jsonl(std::ostream &out, const MeasurementRecord &record) {
    for (const auto &e : record.events) {
        nlohmann::ordered_json j;
        j["layer"] = e.layer;
        j["site"] = e.site;
        j["kind"] = e.kind.name();
        j["outcome"] = e.outcome;
        j["born_probability"] = e.born_probability;
        out << j.dump() << '\n';
    }
}

MeasurementRecord read_record_jsonl(std::istream &in) {
    MeasurementRecord record;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        auto j = nlohmann::json::parse(line);
        record.events.push_back(MeasurementEvent{
            j.at("layer").get<int>(),
            j.at("site").get<int>(),
            MeasurementKind::parse(j.at("kind").get<std::string>()),
            j.at("outcome").get<int>(),
            j.at("born_probability").get<double>()});
    }
    return record;
}

}  // namespace bosonmon
