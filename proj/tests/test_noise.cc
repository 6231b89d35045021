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

#include "braggwit/noise.h"

#include <cmath>

#include <gtest/gtest.h>

#include "braggwit/errors.h"

using namespace braggwit;

namespace {

DetectionModel with_shots(std::uint64_t shots, std::uint64_t seed = 1) {
    DetectionModel m;
    m.shots = shots;
    m.seed = seed;
    return m;
}

}  // namespace

TEST(noise, sample_counts_examples) {
    for (auto c : sample_counts(0, with_shots(100))) EXPECT_EQ(c, 0u);

    auto counts = sample_counts(100, with_shots(10000));
    double mean = 0;
    for (auto c : counts) mean += static_cast<double>(c);
    mean /= 1e4;
    EXPECT_NEAR(mean, 100, 5);

    EXPECT_EQ(sample_counts(3.5, with_shots(500, 9)), sample_counts(3.5, with_shots(500, 9)));
    EXPECT_NE(sample_counts(3.5, with_shots(500, 9), 0), sample_counts(3.5, with_shots(500, 9), 1));
    EXPECT_THROW(sample_counts(2e9, with_shots(1)), DomainError);
    EXPECT_THROW(sample_counts(-1, with_shots(1)), DomainError);
}

TEST(noise, efficiency_scales_the_mean) {
    DetectionModel m = with_shots(20000);
    m.efficiency = 0.5;
    m.window = 2;
    auto counts = sample_counts(10, m);
    NoisyEstimate e = estimate_intensity(counts, m);
    EXPECT_NEAR(e.value, 10, 5 * std::sqrt(10.0 / 20000));
}

TEST(noise, estimate_intensity_examples) {
    DetectionModel m = with_shots(4);
    m.efficiency = 0.5;
    m.window = 2;
    std::vector<std::uint64_t> same(4, 7);
    NoisyEstimate e = estimate_intensity(same, m);
    EXPECT_EQ(e.value, 7.0);
    EXPECT_EQ(e.std_error, 0.0);
    EXPECT_TRUE(e.std_error_defined);

    DetectionModel big = with_shots(10000);
    NoisyEstimate p = estimate_intensity(sample_counts(100, big), big);
    EXPECT_NEAR(p.std_error, 0.1, 0.02);

    std::vector<std::uint64_t> one{3};
    NoisyEstimate single = estimate_intensity(one, with_shots(1));
    EXPECT_FALSE(single.std_error_defined);
    EXPECT_EQ(single.std_error, 0.0);

    std::vector<std::uint64_t> none;
    EXPECT_THROW(estimate_intensity(none, m), DomainError);
}

TEST(noise, zero_spec_is_exact) {
    ChainGeometry g(3);
    WaveVector z = WaveVector::along_chain(g, 0);
    auto r = noisy_witness_pipeline(build_dicke(3, 1), g, {}, with_shots(10), WitnessSpec({0, 0, 0}, {z, z, z}));
    EXPECT_EQ(r.witness.value, 1.0);
    EXPECT_EQ(r.witness.std_error, 0.0);
}

TEST(noise, bright_limit_matches_noiseless) {
    DetectionModel m = with_shots(100, 5);
    m.mean_photons = 1e6;
    ChainGeometry g(4);
    auto r = noisy_witness_pipeline(build_dicke(4, 2), g, {}, m, WitnessSpec::dicke());
    EXPECT_NEAR(r.noiseless_witness, -2.0 / 3.0, 1e-10);
    EXPECT_GT(r.witness.std_error, 0);
    EXPECT_LE(std::abs(r.witness.value - r.noiseless_witness), 3 * r.witness.std_error);
}

TEST(noise, std_error_scales_with_shots) {
    ChainGeometry g(4);
    std::vector<double> errors;
    for (std::uint64_t m : {100u, 10000u}) {
        errors.push_back(noisy_witness_pipeline(build_dicke(4, 2), g, {}, with_shots(m, 3), WitnessSpec::dicke()).witness.std_error);
    }
    double ratio = errors[0] / errors[1];
    EXPECT_GT(ratio, 10 / 1.5);
    EXPECT_LT(ratio, 10 * 1.5);
}

TEST(noise, unbiased_over_repetitions) {
    ChainGeometry g(4);
    std::vector<std::pair<double, double>> angles{{0.4, 0.1}, {1.3, 2.0}, {2.2, -1.0}, {0.9, 0.5}};
    for (const SpinState& s : {build_dicke(4, 2), build_product(angles)}) {
        double sum = 0, var = 0, truth = 0;
        const int reps = 200;
        for (int rep = 0; rep < reps; ++rep) {
            auto r = noisy_witness_pipeline(s, g, {}, with_shots(200, 1000 + static_cast<std::uint64_t>(rep)),
                                            WitnessSpec::dicke());
            sum += r.witness.value;
            var += r.witness.std_error * r.witness.std_error;
            truth = r.noiseless_witness;
        }
        double mean = sum / reps;
        double combined = std::sqrt(var) / reps;
        EXPECT_LE(std::abs(mean - truth), 3 * combined) << mean << " vs " << truth;
    }
}

TEST(noise, deterministic_and_bootstrap) {
    ChainGeometry g(3);
    DetectionModel m = with_shots(300, 77);
    m.bootstrap_resamples = 50;
    auto a = noisy_witness_pipeline(build_w(3), g, {}, m, WitnessSpec::dicke());
    auto b = noisy_witness_pipeline(build_w(3), g, {}, m, WitnessSpec::dicke());
    EXPECT_EQ(a.witness.value, b.witness.value);
    EXPECT_EQ(a.witness.std_error, b.witness.std_error);
    ASSERT_TRUE(a.bootstrap_std_error);
    EXPECT_EQ(*a.bootstrap_std_error, *b.bootstrap_std_error);
    EXPECT_GT(*a.bootstrap_std_error, 0.5 * a.witness.std_error);
    EXPECT_LT(*a.bootstrap_std_error, 2.0 * a.witness.std_error);
}

TEST(noise, model_validation) {
    DetectionModel m;
    m.efficiency = 0;
    EXPECT_THROW(m.validate(), DomainError);
    m = {};
    m.shots = 0;
    EXPECT_THROW(m.validate(), DomainError);
}
