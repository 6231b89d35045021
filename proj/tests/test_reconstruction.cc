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

#include "braggwit/reconstruction.h"

#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <gtest/gtest.h>

#include "braggwit/errors.h"

using namespace braggwit;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Design> designs_for(const std::vector<double>& phases, bool rotations = true) {
    std::vector<Design> out;
    for (double p : phases) out.push_back(design_settings(p, rotations));
    return out;
}

RecordSet noiseless(const MixedState& state, const std::vector<double>& phases, bool rotations = true) {
    ChainGeometry g(state.n_sites());
    auto designs = designs_for(phases, rotations);
    return simulate_records(state, g, designs, {}, complex{1, 0}, 0);
}

RecordSet noiseless(const SpinState& state, const std::vector<double>& phases, bool rotations = true) {
    return noiseless(MixedState(state), phases, rotations);
}

std::vector<double> grid(int points) {
    std::vector<double> out;
    for (int j = 0; j < points; ++j) out.push_back(j * kPi / (points - 1));
    return out;
}

}  // namespace

TEST(reconstruction, default_design_shape) {
    Design d = design_settings(0.4, true);
    EXPECT_EQ(d.settings.size(), 36u);
    EXPECT_LT(d.condition_number, 100);
    EXPECT_EQ(d.columns.size(), static_cast<std::size_t>(kUnknownCount));

    // Omega_0 = Omega_1, phi = 0 has alpha_y = 0: no T^{yy} or T^{xy} weight.
    auto col = [&](Unknown u) { return std::find(d.columns.begin(), d.columns.end(), u) - d.columns.begin(); };
    EXPECT_EQ(d.matrix(0, col(Unknown::Tyy)), 0);
    EXPECT_EQ(d.matrix(0, col(Unknown::ReTxy)), 0);
    EXPECT_EQ(d.matrix(0, col(Unknown::ImTxy)), 0);
    EXPECT_GT(d.matrix(0, col(Unknown::Txx)), 0);

    Design plain = design_settings(0.4, false);
    for (Unknown u : plain.columns) {
        EXPECT_NE(u, Unknown::Tzz);
        EXPECT_NE(u, Unknown::ReTxz);
        EXPECT_NE(u, Unknown::ImTyz);
        EXPECT_NE(u, Unknown::Sx);
    }
    EXPECT_EQ(plain.columns.size(), 5u);

    Design zero = design_settings(0, true);
    EXPECT_EQ(zero.columns.size(), 9u);  // Im parts vanish at p = 0
    EXPECT_LT(zero.condition_number, 100);
}

TEST(reconstruction, dicke_two_sites) {
    RecordSet rs = noiseless(build_dicke(2, 1), {0});
    auto sol = solve_symmetrized(rs, 0);
    EXPECT_NEAR(sol.correlators.at(PauliAxis::X, PauliAxis::X).real(), 2, 1e-12);
    EXPECT_NEAR(sol.correlators.at(PauliAxis::Z, PauliAxis::Z).real(), -2, 1e-12);
    EXPECT_FALSE(sol.residual_flag);
}

TEST(reconstruction, zero_intensities_give_zero_solution) {
    RecordSet rs = noiseless(build_dicke(3, 0), {0.5});
    for (auto& r : rs.records) r.intensity = rs.n_sites * r.setting.coeffs.incoherent_weight();
    auto sol = solve_symmetrized(rs, 0.5);
    EXPECT_LT(sol.values.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(reconstruction, random_three_qubit_round_trip) {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        SpinState s = build_random_pure(3, seed);
        CorrelationTable t = CorrelationTable::from(s);
        for (double p : {0.0, 0.6, 2.0, kPi}) {
            auto sol = solve_symmetrized(noiseless(s, {p}), p);
            auto direct = symmetrized_correlators(t, p);
            for (PauliAxis a : kSpatialAxes) {
                for (PauliAxis b : kSpatialAxes) {
                    ASSERT_TRUE(sol.correlators.has(a, b));
                    EXPECT_NEAR(std::abs(sol.correlators.at(a, b) - direct.at(a, b)), 0, 1e-8);
                    EXPECT_NEAR(std::abs(std::conj(sol.correlators.at(a, b)) - sol.correlators.at(b, a)), 0, 1e-12);
                }
            }
        }
    }
}

TEST(reconstruction, frame_consistency) {
    SpinState s = build_random_pure(4, 31);
    auto sol = solve_symmetrized(noiseless(s, {0.8}), 0.8);
    SpinState rotated = apply_single_qubit_unitary(s, hadamard_rotation(RotationTag::x_access));
    auto direct = symmetrized_correlators(CorrelationTable::from(rotated), 0.8);
    EXPECT_NEAR(sol.correlators.at(PauliAxis::Z, PauliAxis::Z).real(), direct.at(PauliAxis::X, PauliAxis::X).real(),
                1e-10);
}

TEST(reconstruction, single_spin_sums) {
    auto up = single_spin_averages(noiseless(build_dicke(5, 0), {0.3}));
    EXPECT_NEAR(up.sums[2], 5, 1e-10);
    auto balanced = single_spin_averages(noiseless(build_dicke(4, 2), {0.3}));
    EXPECT_NEAR(balanced.sums[2], 0, 1e-10);

    std::vector<std::pair<double, double>> angles{{0.3, 1.0}, {1.2, -0.4}, {2.5, 2.0}};
    SpinState p = build_product(angles);
    auto sums = single_spin_averages(noiseless(p, {0.0, 1.0}));
    CorrelationTable t = CorrelationTable::from(p);
    for (int a = 0; a < 3; ++a) EXPECT_NEAR(sums.sums[static_cast<std::size_t>(a)], t.single_sum(kSpatialAxes[a]), 1e-8);
}

TEST(reconstruction, insensitive_frame_is_named) {
    RecordSet rs = noiseless(build_dicke(3, 1), {0.3});
    RecordSet pruned = rs;
    pruned.records.clear();
    for (const auto& r : rs.records) {
        bool single_laser = r.setting.rabi_0 == 0 || r.setting.rabi_1 == 0;
        if (!(single_laser && r.setting.rotation == RotationTag::y_access)) pruned.records.push_back(r);
    }
    try {
        single_spin_averages(pruned);
        FAIL() << "expected DesignError";
    } catch (const DesignError& e) {
        EXPECT_NE(std::string(e.what()).find("y_access"), std::string::npos) << e.what();
    }
}

TEST(reconstruction, underdetermined_records_name_missing_settings) {
    RecordSet rs = noiseless(build_dicke(3, 1), {0.3}, false);
    RecordSet pruned = rs;
    pruned.records.clear();
    for (const auto& r : rs.records) {
        if (r.setting.channel == ScatteringChannel::mode1) pruned.records.push_back(r);
    }
    try {
        solve_symmetrized(pruned, 0.3);
        FAIL() << "expected DesignError";
    } catch (const DesignError& e) {
        std::string what = e.what();
        EXPECT_NE(what.find("missing settings"), std::string::npos) << what;
        EXPECT_NE(what.find("mode2"), std::string::npos) << what;
    }
    RecordSet empty = rs;
    empty.records.clear();
    EXPECT_THROW(solve_symmetrized(empty, 0.3), DesignError);
}

TEST(reconstruction, separations_two_sites) {
    SpinState s = build_random_pure(2, 12);
    for (double p : {0.4, kPi / 3, 2.5}) {
        auto sol = solve_symmetrized(noiseless(s, {p}), p);
        SymmetrizedCorrelators one[] = {sol.correlators};
        auto g = scan_to_separations(one, 2);
        double expected = sol.correlators.at(PauliAxis::X, PauliAxis::X).real() / (2 * std::cos(p));
        EXPECT_NEAR(g.at(1, PauliAxis::X, PauliAxis::X), expected, 1e-12);
        EXPECT_NEAR(g.at(1, PauliAxis::X, PauliAxis::X), expect_two_site(s, 0, PauliAxis::X, 1, PauliAxis::X).real(), 1e-8);
    }
}

TEST(reconstruction, separations_dicke_four) {
    SpinState d = build_dicke(4, 2);
    auto report = reconstruct(noiseless(d, grid(8)), ChainGeometry(4), std::nullopt);
    ASSERT_TRUE(report.separations) << report.separation_error;
    // Dense numpy oracle: G^{xx}(m) = 2, 4/3, 2/3.
    EXPECT_NEAR(report.separations->at(1, PauliAxis::X, PauliAxis::X), 2.0, 1e-8);
    EXPECT_NEAR(report.separations->at(2, PauliAxis::X, PauliAxis::X), 4.0 / 3.0, 1e-8);
    EXPECT_NEAR(report.separations->at(3, PauliAxis::X, PauliAxis::X), 2.0 / 3.0, 1e-8);
    auto direct = separation_correlators(CorrelationTable::from(d));
    for (int m = 1; m <= 3; ++m) {
        for (PauliAxis a : kSpatialAxes) {
            for (PauliAxis b : kSpatialAxes) EXPECT_NEAR(report.separations->at(m, a, b), direct.at(m, a, b), 1e-8);
        }
    }
}

TEST(reconstruction, separations_need_enough_phases) {
    SpinState s = build_random_pure(3, 1);
    auto sol = solve_symmetrized(noiseless(s, {kPi / 2}), kPi / 2);
    SymmetrizedCorrelators one[] = {sol.correlators};
    EXPECT_THROW(scan_to_separations(one, 3), DesignError);
}

TEST(reconstruction, rdm_examples) {
    auto up = reconstruct(noiseless(build_dicke(3, 0), grid(4)), ChainGeometry(3), std::nullopt);
    ASSERT_EQ(up.rdms.size(), 2u);
    for (const auto& r : up.rdms) {
        Eigen::Matrix4cd want = Eigen::Matrix4cd::Zero();
        want(0, 0) = 1;
        EXPECT_LT((r.rho - want).norm(), 1e-8);
        EXPECT_TRUE(r.physical);
    }

    auto bell = reconstruct(noiseless(build_dicke(2, 1), {0.0, 1.0}), ChainGeometry(2), std::nullopt);
    ASSERT_EQ(bell.rdms.size(), 1u);
    Eigen::Vector4cd psi(0, 1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0);
    Eigen::Matrix4cd target = psi * psi.adjoint();
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(bell.rdms[0].rho - target);
    EXPECT_LT(0.5 * eig.eigenvalues().cwiseAbs().sum(), 1e-8);

    SeparationCorrelators zeros;
    zeros.n_sites = 3;
    zeros.values.assign(2, {});
    zeros.available.fill(true);
    SingleSpinSums none;
    none.available.fill(true);
    auto mixed = two_body_rdm(zeros, none, 1);
    EXPECT_LT((mixed.rho - Eigen::Matrix4cd::Identity() / 4).norm(), 1e-15);
}

TEST(reconstruction, rdm_flags_nonphysical_input) {
    SeparationCorrelators bad;
    bad.n_sites = 2;
    bad.values.assign(1, {});
    bad.available.fill(true);
    for (int i : {0, 4, 8}) bad.values[0][static_cast<std::size_t>(i)] = 1;  // <xx> = <yy> = <zz> = 1
    SingleSpinSums none;
    none.available.fill(true);
    auto r = two_body_rdm(bad, none, 1);
    EXPECT_FALSE(r.physical);
    EXPECT_LT(r.eigenvalues.minCoeff(), -0.1);
    EXPECT_NEAR(r.rho.trace().real(), 1, 1e-15);
}

TEST(reconstruction, witness_from_records_examples) {
    EXPECT_NEAR(witness_from_records(noiseless(build_dicke(2, 1), {0}), ChainGeometry(2), WitnessSpec::dicke()), -2,
                1e-8);
    EXPECT_NEAR(witness_from_records(noiseless(build_dicke(2, 0), {0}), ChainGeometry(2), WitnessSpec::dicke()), 2,
                1e-8);
    ChainGeometry g(3);
    WaveVector z = WaveVector::along_chain(g, 0);
    EXPECT_EQ(witness_from_records(noiseless(build_dicke(3, 1), {0.2}), g, WitnessSpec({0, 0, 0}, {z, z, z})), 1.0);
}

TEST(reconstruction, witness_matches_direct_on_random_states) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        int n = 2 + static_cast<int>(seed % 4);
        ChainGeometry g(n);
        double px = 0.3 * static_cast<double>(seed % 5), pz = 1.1;
        WitnessSpec spec({0.8, -0.5, 1.0}, {WaveVector::along_chain(g, px), WaveVector::along_chain(g, 0),
                                            WaveVector::along_chain(g, pz)});
        SpinState s = build_random_pure(n, 900 + seed);
        RecordSet rs = noiseless(s, {px, 0.0, pz});
        EXPECT_NEAR(witness_from_records(rs, g, spec), witness_general(s, g, spec), 1e-8) << seed;
    }
}

TEST(reconstruction, witness_without_rotation_reports_z_gap) {
    RecordSet rs = noiseless(build_dicke(3, 1), {0}, false);
    EXPECT_THROW(witness_from_records(rs, ChainGeometry(3), WitnessSpec::dicke()), DesignError);
}

TEST(reconstruction, negative_phases_fold) {
    SpinState s = build_random_pure(3, 6);
    auto sol_minus = solve_symmetrized(noiseless(s, {-0.7}), -0.7);
    auto direct = symmetrized_correlators(CorrelationTable::from(s), -0.7);
    EXPECT_NEAR(std::abs(sol_minus.correlators.at(PauliAxis::X, PauliAxis::Y) - direct.at(PauliAxis::X, PauliAxis::Y)), 0,
                1e-8);
    SymmetrizedCorrelators scan[] = {sol_minus.correlators,
                                     solve_symmetrized(noiseless(s, {1.9}), 1.9).correlators};
    auto g = scan_to_separations(scan, 3);
    auto want = separation_correlators(CorrelationTable::from(s));
    for (int m = 1; m <= 2; ++m) {
        for (PauliAxis a : kSpatialAxes) {
            for (PauliAxis b : kSpatialAxes) EXPECT_NEAR(g.at(m, a, b), want.at(m, a, b), 1e-8);
        }
    }
}
