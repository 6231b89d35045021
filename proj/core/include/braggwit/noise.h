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

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "braggwit/reconstruction.h"

namespace braggwit {

/// Poissonian photodetection.
///
/// A setting with normalized intensity I~ produces on average
///   lambda = mean_photons * I~ / (N (|alpha_x|^2 + |alpha_y|^2))
/// photons per shot, i.e. mean_photons is the count of the incoherent part
/// alone. This single constant absorbs 2 kappa |f|^2, efficiency and window.
struct DetectionModel {
    double efficiency = 1;     // eta in (0, 1]
    double window = 1;         // T_det > 0
    std::uint64_t shots = 1000;
    std::uint64_t seed = 0;
    double mean_photons = 10;  // lambda_0
    double overflow_guard = 1e9;
    int bootstrap_resamples = 0;

    void validate() const;
};

struct NoisyEstimate {
    double value = 0;
    double std_error = 0;
    std::uint64_t n_shots = 0;
    /// False for a single shot: no variance estimate exists and std_error is 0.
    bool std_error_defined = true;
};

/// M = model.shots Poisson samples with mean efficiency * mean_rate * window,
/// drawn from sub-stream `stream` of the model seed.
/// Throws DomainError if the mean is negative, non-finite or above the overflow guard.
std::vector<std::uint64_t> sample_counts(double mean_rate, const DetectionModel& model, std::uint64_t stream = 0);

/// mean(counts) / (eta T_det) with std_error = sample_std / sqrt(M) / (eta T_det).
NoisyEstimate estimate_intensity(std::span<const std::uint64_t> counts, const DetectionModel& model);

struct SettingCounts {
    MeasurementSetting setting;
    double true_intensity = 0;
    double lambda = 0;
    double count_mean = 0;
    double count_variance = 0;
    NoisyEstimate intensity;
};

struct NoiseReport {
    NoisyEstimate witness;
    double noiseless_witness = 0;
    std::optional<double> bootstrap_std_error;
    std::vector<SettingCounts> settings;
    std::vector<SymmetrizedSolution> solutions;
    DetectionModel model;
    int n_sites = 0;
};

struct DesignOptions {
    bool include_rotations = true;
    LaserCavitySettings base;
    double condition_cap = 1e6;
};

/// Forward model -> Poisson counts per setting -> weighted least squares ->
/// witness, with std_error from the linearized solver covariance.
NoiseReport noisy_witness_pipeline(const MixedState& state, const ChainGeometry& geometry,
                                   const DesignOptions& design, const DetectionModel& model, const WitnessSpec& spec);
NoiseReport noisy_witness_pipeline(const SpinState& state, const ChainGeometry& geometry,
                                   const DesignOptions& design, const DetectionModel& model, const WitnessSpec& spec);

}  // namespace braggwit
