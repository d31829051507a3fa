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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "bosonmon/errors.h"

using namespace bosonmon;
using namespace bosonmon::hw;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST(ramsey_probs, parity_mapping) {
    for (double chi : {1.0, 2 * kPi * 0.7}) {
        DispersiveParams params{chi, kPi / chi, 0.0};
        for (int n = 0; n <= 20; n++) {
            RamseyProbabilities r = ramsey_probs(n, params);
            if (n % 2 == 0) {
                EXPECT_NEAR(r.excited, 1.0, 1e-12) << n;
            } else {
                EXPECT_NEAR(r.ground, 1.0, 1e-12) << n;
            }
        }
    }
}

TEST(ramsey_probs, normalized) {
    for (int n = 0; n < 30; n++) {
        for (double phase : {-1.3, 0.0, 0.4, 2.9}) {
            RamseyProbabilities r = ramsey_probs(n, {0.37, 5.1, phase});
            EXPECT_NEAR(r.ground + r.excited, 1.0, 1e-15);
            EXPECT_GE(r.ground, 0.0);
            EXPECT_GE(r.excited, 0.0);
        }
    }
}

TEST(photon_count_bits, worked_example) {
    PhotonCount c = photon_count_bits(5, 3);
    EXPECT_EQ(c.bits, (std::vector<int>{1, 0, 1}));
    EXPECT_EQ(c.value(), 5);
    ASSERT_EQ(c.trace.size(), 3u);
    EXPECT_EQ(c.trace[0].n_tilde, 0);
    EXPECT_EQ(c.trace[1].n_tilde, 1);
    EXPECT_EQ(c.trace[2].n_tilde, 1);
    EXPECT_EQ(photon_count_bits(0, 5).bits, (std::vector<int>(5, 0)));
}

TEST(photon_count_bits, exhaustive_round_trip) {
    for (int k = 1; k <= 8; k++) {
        for (long long n = 0; n < (1LL << k); n++) {
            for (double chi : {1.0, 2 * kPi * 1.3}) {
                PhotonCount c = photon_count_bits(n, k, chi);
                ASSERT_EQ(static_cast<int>(c.bits.size()), k);
                for (int m = 0; m < k; m++) {
                    ASSERT_EQ(c.bits[m], static_cast<int>((n >> m) & 1)) << "n=" << n << " m=" << m;
                    ASSERT_NEAR(c.trace[m].p_ground, c.bits[m], 1e-12);
                }
                ASSERT_EQ(c.value(), n);
            }
        }
    }
    EXPECT_THROW(photon_count_bits(8, 3), DomainError);
    EXPECT_THROW(photon_count_bits(-1, 3), DomainError);
}

TEST(bit_readout_params, idle_time_and_phase) {
    DispersiveParams p = bit_readout_params(2.0, 2, 3);
    EXPECT_NEAR(p.idle_time, kPi / (4 * 2.0), 1e-15);
    EXPECT_NEAR(p.phase, -3 * kPi / 8, 1e-15);
}

TEST(effective_rates, inherited_lifetimes) {
    // Coupler-mode-1 parameters; effective lifetimes of 562 us and 824 us.
    double g = 0.533;
    double delta = 2.261;
    double kappa_c = 1.0 / 50.0;
    EffectiveRates short_t1 = effective_rates(g, delta, kappa_c, 1.0 / 5.0, 0.02, NoiseSpectrum::Pink, 1.0 / 1500.0);
    EffectiveRates long_t1 = effective_rates(g, delta, kappa_c, 1.0 / 5.0, 0.02, NoiseSpectrum::Pink, 1.0 / 10000.0);
    EXPECT_NEAR(1.0 / short_t1.kappa, 562.0, 0.02 * 562.0);
    EXPECT_NEAR(1.0 / long_t1.kappa, 824.0, 0.02 * 824.0);
    // Independent evaluation of kappa_a + (g/Delta)^2 kappa_C.
    double ratio = g / delta;
    EXPECT_NEAR(short_t1.kappa, 1.0 / 1500.0 + ratio * ratio * kappa_c, 1e-15);
}

TEST(effective_rates, limits_and_spectra) {
    EffectiveRates off = effective_rates(0.0, 2.0, 0.02, 0.2, 0.05, NoiseSpectrum::Pink, 0.001);
    EXPECT_DOUBLE_EQ(off.kappa, 0.001);
    EXPECT_DOUBLE_EQ(off.gamma, 0.05 * 0.02);
    EffectiveRates pink = effective_rates(0.1, 1.0, 0.02, 0.2, 0.0, NoiseSpectrum::Pink, 0.0);
    EffectiveRates white = effective_rates(0.1, 1.0, 0.02, 0.2, 0.0, NoiseSpectrum::White, 0.0);
    EXPECT_NEAR(pink.gamma / white.gamma, 100.0, 1e-9);
    EXPECT_THROW(effective_rates(0.1, 0.0, 0.02, 0.2, 0.0, NoiseSpectrum::Pink, 0.0), DomainError);
}

TEST(wall_time, reference_values) {
    WallTimeParams bsfp;
    WallTimeParams hubbard;
    hubbard.model = WallTimeModel::WithHubbard;
    EXPECT_NEAR(wall_time(4, 8, 8, 1.0, bsfp), 104.0, 0.15 * 104.0);
    EXPECT_NEAR(wall_time(4, 8, 8, 1.0, hubbard), 152.0, 0.15 * 152.0);
    // Literal evaluation: 4*8*1.32 + 4*8*1.47 + 4*0.125*16 and with S' = 16.
    EXPECT_NEAR(wall_time(4, 8, 8, 1.0, bsfp), 97.28, 1e-12);
    EXPECT_NEAR(wall_time(4, 8, 8, 1.0, hubbard), 139.52, 1e-12);
}

TEST(wall_time, structure) {
    WallTimeParams a;
    WallTimeParams b;
    b.t_parity = 9.0;
    EXPECT_DOUBLE_EQ(wall_time(6, 4, 5, 0.0, a), wall_time(6, 4, 5, 0.0, b));
    // Linear in L and in p.
    double f1 = wall_time(3, 4, 5, 0.3, a);
    double f2 = wall_time(4, 4, 5, 0.3, a);
    double f3 = wall_time(5, 4, 5, 0.3, a);
    EXPECT_NEAR(f3 - f2, f2 - f1, 1e-12);
    double g1 = wall_time(4, 4, 5, 0.1, a);
    double g2 = wall_time(4, 4, 5, 0.4, a);
    double g3 = wall_time(4, 4, 5, 0.7, a);
    EXPECT_NEAR(g3 - g2, g2 - g1, 1e-12);
    WallTimeParams rp;
    rp.model = WallTimeModel::BSRP;
    EXPECT_DOUBLE_EQ(wall_time(4, 8, 8, 1.0, rp), wall_time(4, 8, 8, 1.0, a));
    EXPECT_NEAR(state_prep_time(4), 1.9 + 2 * 1.3, 1e-15);
}
