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

#ifndef BOSONMON_HARDWARE_MODEL_H
#define BOSONMON_HARDWARE_MODEL_H

#include <vector>

namespace bosonmon::hw {

// Units: times in microseconds, rates in 1/us, dispersive shift chi in rad/us.

/// Ramsey readout of a dispersively coupled cavity: idle time T between the two
/// pi/2 pulses and phase offset phi on the second one.
struct DispersiveParams {
    double chi;
    double idle_time;
    double phase;
};

struct RamseyProbabilities {
    double ground;
    double excited;
};

/// P_g = sin^2(chi n T / 2 + phi), P_e = cos^2(chi n T / 2 + phi).
RamseyProbabilities ramsey_probs(int n, const DispersiveParams &params);

/// Parameters for reading bit m once the lower bits revealed n_tilde:
/// T = pi / (2^m chi), phi = -n_tilde pi / 2^(m+1).
DispersiveParams bit_readout_params(double chi, int m, long long n_tilde);

struct BitReadout {
    int m;
    long long n_tilde;  ///< photon number revealed by bits below m
    int bit;
    double p_ground;
};

struct PhotonCount {
    std::vector<int> bits;  ///< least significant first
    std::vector<BitReadout> trace;
    long long value() const;
};

/// Adaptive bitwise photon counting with feedforward. Each step must be
/// deterministic to within 1e-12 (|g> reads 1, |e> reads 0); anything else throws
/// ModelInconsistencyError. Throws DomainError unless 0 <= n < 2^bits.
PhotonCount photon_count_bits(long long n, int bits, double chi = 1.0);

enum class NoiseSpectrum { Pink, White };

struct EffectiveRates {
    double kappa;  ///< inherited energy decay rate
    double gamma;  ///< inherited dephasing rate (collapse operator n)
};

/// kappa = kappa_a + (g/Delta)^2 kappa_C,
/// gamma = (g/Delta)^e gamma_C + n_C kappa_C with e = 2 (pink) or 4 (white).
/// g and Delta only enter as a ratio. Throws DomainError for Delta == 0.
EffectiveRates effective_rates(double g, double delta, double kappa_c, double gamma_c, double n_c, NoiseSpectrum spectrum, double kappa_a);

enum class WallTimeModel { BSFP, BSRP, WithHubbard };

struct WallTimeParams {
    double t_snap = 1.32;
    double t_parity = 1.47;
    double tau_bs = 0.25;
    WallTimeModel model = WallTimeModel::BSFP;
};

/// L S' T_snap + L M p T_parity + L (tau_bs / 2)(S + M), with S' = S + M when the
/// monitored layers carry Hubbard gates and S' = S otherwise.
double wall_time(int modes, int scramble_layers, int monitored_layers, double p, const WallTimeParams &params);

/// Checkerboard state-preparation time, 1.9 us + (L/2) 1.3 us.
double state_prep_time(int modes);

}  // namespace bosonmon::hw

#endif
