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

#include "bosonmon/analysis.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "bosonmon/errors.h"

namespace bosonmon {

Curve curve_at(const std::vector<EntropyRecord> &records, int modes, int t) {
    std::vector<const EntropyRecord *> rows;
    for (const auto &r : records) {
        if (r.modes == modes && r.t == t) {
            rows.push_back(&r);
        }
    }
    if (rows.empty()) {
        throw DomainError("no records for L = " + std::to_string(modes) + " at t = " + std::to_string(t));
    }
    std::stable_sort(rows.begin(), rows.end(), [](const EntropyRecord *a, const EntropyRecord *b) { return a->p < b->p; });
    Curve c;
    c.modes = modes;
    c.t = t;
    for (const auto *r : rows) {
        c.p.push_back(r->p);
        c.mean.push_back(r->mean);
        c.sem.push_back(r->sem);
    }
    return c;
}

CrossingResult crossing_estimate(const Curve &small, const Curve &large) {
    std::size_t n = small.p.size();
    if (n < 2) {
        throw DomainError("crossing estimate needs at least two grid points");
    }
    if (large.p.size() != n || small.mean.size() != n || large.mean.size() != n || small.sem.size() != n || large.sem.size() != n) {
        throw DomainError("curves must share a common p grid");
    }
    for (std::size_t i = 0; i < n; i++) {
        if (std::abs(small.p[i] - large.p[i]) > 1e-12) {
            throw DomainError("curves must share a common p grid");
        }
    }
    std::vector<double> d(n);
    std::vector<double> var(n);
    for (std::size_t i = 0; i < n; i++) {
        d[i] = large.mean[i] - small.mean[i];
        var[i] = small.sem[i] * small.sem[i] + large.sem[i] * large.sem[i];
    }
    CrossingResult result;
    for (std::size_t i = 0; i + 1 < n; i++) {
        if (d[i] * d[i + 1] < 0.0) {
            double h = small.p[i + 1] - small.p[i];
            double delta = d[i] - d[i + 1];
            double root = small.p[i] + h * d[i] / delta;
            double gi = h * d[i + 1] / (delta * delta);
            double gj = h * d[i] / (delta * delta);
            result.roots.push_back({root, std::sqrt(gi * gi * var[i] + gj * gj * var[i + 1])});
        } else if (i > 0 && d[i] == 0.0 && d[i - 1] * d[i + 1] < 0.0) {
            result.roots.push_back({small.p[i], 0.0});
        }
    }
    if (result.roots.empty()) {
        throw NoCrossingError(
            "S_R curves for L = " + std::to_string(small.modes) + " and L = " + std::to_string(large.modes) + " do not cross");
    }
    return result;
}

CollapseTable collapse_transform(const std::vector<EntropyRecord> &records, double z, double p_c) {
    if (records.empty()) {
        throw DomainError("collapse needs at least one record");
    }
    if (!(z > 0.0)) {
        throw DomainError("dynamical exponent must be positive");
    }
    double best = records.front().p;
    for (const auto &r : records) {
        double gap = std::abs(r.p - p_c);
        double best_gap = std::abs(best - p_c);
        if (gap < best_gap || (gap == best_gap && r.p < best)) {
            best = r.p;
        }
    }
    CollapseTable table;
    table.p_selected = best;
    table.z = z;
    for (const auto &r : records) {
        if (r.p != best) {
            continue;
        }
        double x = r.t / std::pow(static_cast<double>(r.modes), z);
        table.rows.push_back(CollapseRow{r.modes, r.p, r.t, x, r.mean, r.sem});
    }
    return table;
}

}  // namespace bosonmon
