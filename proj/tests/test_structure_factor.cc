// Copyright 2026 The braggwit Authors
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

#include "braggwit/structure_factor.h"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "braggwit/errors.h"
#include "braggwit/state_io.h"
#include "dense_oracle.h"

using namespace braggwit;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr char kAxes[3] = {'x', 'y', 'z'};

SpinState all_up(int n) { return build_dicke(n, 0); }

}  // namespace

TEST(structure_factor, examples) {
    ChainGeometry g2(2);
    WaveVector q0 = WaveVector::along_chain(g2, 0);
    auto s = structure_factor(all_up(2), g2, q0);
    EXPECT_NEAR(s.at(PauliAxis::Z, PauliAxis::Z).real(), 1, 1e-14);
    EXPECT_NEAR(std::abs(s.at(PauliAxis::X, PauliAxis::X)), 0, 1e-14);
    EXPECT_NEAR(std::abs(s.at(PauliAxis::Y, PauliAxis::Y)), 0, 1e-14);

    auto d = structure_factor(build_dicke(2, 1), g2, q0);
    EXPECT_NEAR(d.at(PauliAxis::X, PauliAxis::X).real(), 1, 1e-14);
    EXPECT_NEAR(d.at(PauliAxis::Y, PauliAxis::Y).real(), 1, 1e-14);
    EXPECT_NEAR(d.at(PauliAxis::Z, PauliAxis::Z).real(), -1, 1e-14);
}

TEST(structure_factor, two_sites_at_pi_flip_sign) {
    ChainGeometry g2(2);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SpinState s = build_random_pure(2, seed);
        auto a = structure_factor(s, g2, WaveVector::along_chain(g2, 0));
        auto b = structure_factor(s, g2, WaveVector::along_chain(g2, kPi));
        for (std::size_t i = 0; i < 9; ++i) EXPECT_NEAR(std::abs(b.entries[i] + a.entries[i]), 0, 1e-12);
    }
}

TEST(structure_factor, matches_dense_operator_oracle) {
    for (int n = 2; n <= 6; ++n) {
        ChainGeometry g(n, 0.7);
        SpinState s = build_random_pure(n, 100 + static_cast<std::uint64_t>(n));
        for (double p : {0.0, 0.4, kPi / 3, 2.9}) {
            WaveVector q = WaveVector::along_chain(g, p);
            auto sf = structure_factor(s, g, q);
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    // S^{ab}(q) = sum_{i<j} e^{i q (r_i - r_j)} <sigma_i^a sigma_j^b>
                    oracle::Dense m = oracle::Dense::Zero(1 << n, 1 << n);
                    for (int i = 0; i < n; ++i) {
                        for (int j = i + 1; j < n; ++j) {
                            m += std::polar(1.0, p * (i - j)) * oracle::site_operator(n, {{i, oracle::pauli(kAxes[a])}}) *
                                 oracle::site_operator(n, {{j, oracle::pauli(kAxes[b])}});
                        }
                    }
                    complex want = oracle::expect(oracle::to_vec(s), m);
                    EXPECT_NEAR(std::abs(sf.at(kSpatialAxes[a], kSpatialAxes[b]) - want), 0, 1e-10)
                        << "n=" << n << " p=" << p << " a=" << a << " b=" << b;
                }
            }
        }
    }
}

TEST(structure_factor, conjugate_is_negative_q) {
    ChainGeometry g(5);
    SpinState s = build_random_pure(5, 77);
    WaveVector q = WaveVector::along_chain(g, 1.1);
    auto plus = structure_factor(s, g, q), minus = structure_factor(s, g, -q);
    for (PauliAxis a : kSpatialAxes) {
        for (PauliAxis b : kSpatialAxes) EXPECT_NEAR(std::abs(std::conj(plus.at(a, b)) - minus.at(a, b)), 0, 1e-12);
    }
}

TEST(structure_factor, c_alpha_examples_and_symmetry) {
    ChainGeometry g2(2);
    WaveVector q0 = WaveVector::along_chain(g2, 0);
    EXPECT_NEAR(c_alpha(build_dicke(2, 1), g2, PauliAxis::X, q0), 1, 1e-14);
    EXPECT_NEAR(c_alpha(build_dicke(2, 1), g2, PauliAxis::Z, q0), -1, 1e-14);
    for (double p : {0.0, 1.0, 2.5}) EXPECT_NEAR(c_alpha(all_up(2), g2, PauliAxis::X, WaveVector::along_chain(g2, p)), 0, 1e-14);

    for (int n = 2; n <= 6; ++n) {
        ChainGeometry g(n);
        SpinState s = build_random_pure(n, 7 * static_cast<std::uint64_t>(n));
        for (double p : {0.3, 1.7}) {
            WaveVector q = WaveVector::along_chain(g, p);
            for (PauliAxis a : kSpatialAxes) {
                double plus = c_alpha(s, g, a, q);
                EXPECT_EQ(plus, c_alpha(s, g, a, -q));
                double ref = 0;
                for (int i = 0; i < n; ++i) {
                    for (int j = i + 1; j < n; ++j) ref += std::cos(p * (i - j)) * expect_two_site(s, i, a, j, a).real();
                }
                EXPECT_NEAR(plus, 2.0 / (n * (n - 1)) * ref, 1e-12);
            }
        }
    }
}

TEST(structure_factor, dicke_witness_values) {
    EXPECT_NEAR(witness_dicke(build_dicke(2, 1), ChainGeometry(2)), -2.0, 1e-12);
    EXPECT_NEAR(witness_dicke(all_up(2), ChainGeometry(2)), 2.0, 1e-12);
    EXPECT_NEAR(witness_dicke(build_ghz(2), ChainGeometry(2)), 2.0, 1e-12);
    // Pinned from the dense numpy oracle: -2/(N-1) for even N.
    EXPECT_NEAR(witness_dicke(build_dicke(4, 2), ChainGeometry(4)), -2.0 / 3.0, 1e-12);
    EXPECT_NEAR(witness_dicke(build_dicke(6, 3), ChainGeometry(6)), -0.4, 1e-12);
    EXPECT_NEAR(witness_dicke(build_dicke(8, 4), ChainGeometry(8)), -2.0 / 7.0, 1e-12);
    EXPECT_NEAR(witness_dicke(build_dicke(5, 2), ChainGeometry(5)), -0.4, 1e-12);
}

TEST(structure_factor, dicke_detected_up_to_twelve) {
    for (int n = 2; n <= 12; ++n) EXPECT_LT(witness_dicke(build_dicke(n, n / 2), ChainGeometry(n)), 0) << n;
}

TEST(structure_factor, separable_floor) {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        int n = 2 + static_cast<int>(seed % 5);
        MixedState m = build_random_separable(n, 1 + static_cast<int>(seed % 8), seed);
        EXPECT_GE(witness_dicke(m, ChainGeometry(n)), -1e-10) << seed;
    }
}

TEST(structure_factor, general_witness) {
    ChainGeometry g2(2);
    EXPECT_NEAR(witness_general(build_dicke(2, 1), g2, WitnessSpec::dicke()), -2.0, 1e-12);
    WaveVector z = WaveVector::along_chain(g2, 0);
    WitnessSpec zero({0, 0, 0}, {z, z, z});
    for (std::uint64_t seed = 0; seed < 5; ++seed) EXPECT_EQ(witness_general(build_random_pure(2, seed), g2, zero), 1.0);
    std::vector<std::pair<double, double>> plus{{kPi / 2, 0}, {kPi / 2, 0}};
    WitnessSpec x_only({1, 0, 0}, {z, z, z});
    EXPECT_NEAR(witness_general(build_product(plus), g2, x_only), 0.0, 1e-12);
    EXPECT_THROW(WitnessSpec({1.5, 0, 0}, {z, z, z}), DomainError);
}

TEST(structure_factor, real_or_throw_guards_residuals) {
    EXPECT_EQ(real_or_throw({2, 1e-13}, "w"), 2);
    EXPECT_THROW(real_or_throw({2, 1e-9}, "w"), NumericalError);
}

TEST(structure_factor, json_round_trip) {
    ChainGeometry g(4);
    SpinState s = build_random_pure(4, 5);
    auto sf = structure_factor(s, g, WaveVector::along_chain(g, 0.9));
    std::string text = structure_factor_to_json(sf, state_hash(s));
    auto back = structure_factor_from_json(text);
    EXPECT_EQ(back.phase_per_site, sf.phase_per_site);
    for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(back.entries[i], sf.entries[i]);
    EXPECT_EQ(structure_factor_to_json(back, state_hash(s)), text);
    EXPECT_THROW(structure_factor_from_json("{}"), SchemaError);
}
