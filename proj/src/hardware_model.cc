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

#include "bosonmon/hardware_model.h"

#include <cmath>
#include <numbers>
#include <string>

#include "bosonmon/errors.h"

namespace bosonmon::hw {

RamseyProbabilities ramsey_probs(int n, const DispersiveParams &params) {
    if (n < 0) {
        throw DomainError("photon number must be non-negative");
    }
    double arg = 0.5 * params.chi * n * params.idle_time + params.phase;
    double s = std::sin(arg);
    double pg = s * s;
    return {pg, 1.0 - pg};
}

DispersiveParams bit_readout_params(double chi, int m, long long n_tilde) {
    double scale = std::ldexp(1.0, m);
    return DispersiveParams{
        chi,
        std::numbers::pi / (scale * chi),
        -static_cast<double>(n_tilde) * std::numbers::pi / (2.0 * scale),
    };
}

long long PhotonCount::value() const {
    long long v = 0;
    for (std::size_t i = 0; i < bits.size(); i++) {
        v |= static_cast<long long>(bits[i]) << i;
    }
    return v;
}

PhotonCount photon_count_bits(long long n, int bits, double chi) {
    if (bits < 0 || bits > 62 || n < 0 || n >= (1LL << bits)) {
        throw DomainError("photon number " + std::to_string(n) + " not representable with " + std::to_string(bits) + " bits");
    }
    PhotonCount out;
    long long n_tilde = 0;
    for (int m = 0; m < bits; m++) {
        RamseyProbabilities p = ramsey_probs(static_cast<int>(n), bit_readout_params(chi, m, n_tilde));
        int bit;
        if (p.ground > 1.0 - 1e-12) {
            bit = 1;
        } else if (p.ground < 1e-12) {
            bit = 0;
        } else {
            throw ModelInconsistencyError(
                "bit " + std::to_string(m) + " readout is not deterministic (P_g = " + std::to_string(p.ground) + ")");
        }
        out.trace.push_back(BitReadout{m, n_tilde, bit, p.ground});
        out.bits.push_back(bit);
        n_tilde += static_cast<long long>(bit) << m;
    }
    return out;
}

EffectiveRates effective_rates(double g, double delta, double kappa_c, double gamma_c, double n_c, NoiseSpectrum spectrum, double kappa_a) {
    if (delta == 0.0) {
        throw DomainError("coupler detuning must be non-zero");
    }
    double r2 = (g / delta) * (g / delta);
    double leak = spectrum == NoiseSpectrum::Pink ? r2 : r2 * r2;
    return EffectiveRates{
        kappa_a + r2 * kappa_c,
        leak * gamma_c + n_c * kappa_c,
    };
}

double wall_time(int modes, int scramble_layers, int monitored_layers, double p, const WallTimeParams &params) {
    double L = modes;
    double S = scramble_layers;
    double M = monitored_layers;
    double snap_layers = params.model == WallTimeModel::WithHubbard ? S + M : S;
    return L * snap_layers * params.t_snap + L * M * p * params.t_parity + L * 0.5 * params.tau_bs * (S + M);
}

double state_prep_time(int modes) {
    return 1.9 + 0.5 * modes * 1.3;
}

}  // namespace bosonmon::hw
