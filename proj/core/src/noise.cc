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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "braggwit/errors.h"
#include "braggwit/parallel.h"
#include "braggwit/rng.h"

namespace braggwit {

void DetectionModel::validate() const {
    if (!(efficiency > 0 && efficiency <= 1)) throw DomainError("efficiency must be in (0, 1]");
    if (!(window > 0) || !std::isfinite(window)) throw DomainError("detection window must be > 0");
    if (shots < 1) throw DomainError("shots per setting must be >= 1");
    if (!(mean_photons > 0) || !std::isfinite(mean_photons)) throw DomainError("mean_photons must be > 0");
    if (!(overflow_guard > 0)) throw DomainError("overflow guard must be > 0");
    if (bootstrap_resamples < 0) throw DomainError("bootstrap_resamples must be >= 0");
}

std::vector<std::uint64_t> sample_counts(double mean_rate, const DetectionModel& model, std::uint64_t stream) {
    model.validate();
    const double lambda = model.efficiency * mean_rate * model.window;
    if (!std::isfinite(lambda) || lambda < 0) throw DomainError("Poisson mean must be finite and >= 0");
    if (lambda > model.overflow_guard) {
        throw DomainError("Poisson mean " + std::to_string(lambda) + " exceeds the overflow guard");
    }
    std::vector<std::uint64_t> counts(model.shots, 0);
    if (lambda == 0) return counts;
    Philox4x32 engine(model.seed, stream);
    std::poisson_distribution<std::uint64_t> dist(lambda);
    for (auto& c : counts) c = dist(engine);
    return counts;
}

NoisyEstimate estimate_intensity(std::span<const std::uint64_t> counts, const DetectionModel& model) {
    model.validate();
    if (counts.empty()) throw DomainError("estimate_intensity needs at least one count");
    const double m = static_cast<double>(counts.size());
    double mean = 0;
    for (auto c : counts) mean += static_cast<double>(c);
    mean /= m;
    double ss = 0;
    for (auto c : counts) ss += (static_cast<double>(c) - mean) * (static_cast<double>(c) - mean);
    const double scale = 1.0 / (model.efficiency * model.window);
    NoisyEstimate e;
    e.value = mean * scale;
    e.n_shots = counts.size();
    if (counts.size() == 1) {
        e.std_error_defined = false;
    } else {
        e.std_error = std::sqrt(ss / (m - 1)) / std::sqrt(m) * scale;
    }
    return e;
}

namespace {

std::vector<Design> witness_designs(const ChainGeometry& geometry, const DesignOptions& design,
                                    const WitnessSpec& spec) {
    std::vector<double> phases;
    for (PauliAxis a : kSpatialAxes) {
        if (spec.coefficient(a) == 0) continue;
        double p = spec.wave_vector(a).phase_per_site(geometry);
        bool known = std::any_of(phases.begin(), phases.end(), [&](double q) {
            return std::abs(std::remainder(q - p, 2 * std::numbers::pi)) <= 1e-9 ||
                   std::abs(std::remainder(q + p, 2 * std::numbers::pi)) <= 1e-9;
        });
        if (!known) phases.push_back(p);
    }
    std::vector<Design> designs;
    for (double p : phases) designs.push_back(design_settings(p, design.include_rotations, design.base, design.condition_cap));
    return designs;
}

struct Calibration {
    double reference = 0;  // N (|alpha_x|^2 + |alpha_y|^2)
    double rate = 0;       // calibrated rate lambda_0 I~ / reference
};

Calibration calibrate(const MeasurementRecord& r, int n_sites, const DetectionModel& model) {
    Calibration c;
    c.reference = n_sites * r.setting.coeffs.incoherent_weight();
    c.rate = c.reference > 0 ? model.mean_photons * std::max(r.intensity, 0.0) / c.reference : 0.0;
    return c;
}

// Maps counts of one setting to (intensity, variance) on the I~ scale. The
// variance uses the Poisson model with a 1/M floor so zero-count settings keep
// a finite weight.
std::pair<double, double> counts_to_intensity(double count_mean, double reference, const DetectionModel& model) {
    const double m = static_cast<double>(model.shots);
    const double to_intensity = reference / (model.mean_photons * model.efficiency * model.window);
    return {count_mean * to_intensity, (count_mean + 1.0 / m) / m * to_intensity * to_intensity};
}

}  // namespace

NoiseReport noisy_witness_pipeline(const MixedState& state, const ChainGeometry& geometry,
                                   const DesignOptions& design, const DetectionModel& model, const WitnessSpec& spec) {
    model.validate();
    NoiseReport report;
    report.model = model;
    report.n_sites = state.n_sites();
    if (spec.is_trivial()) {
        report.witness.value = 1;
        report.noiseless_witness = 1;
        return report;
    }
    const auto designs = witness_designs(geometry, design, spec);
    const RecordSet exact = simulate_records(state, geometry, designs, design.base, complex{1, 0}, 0);
    report.noiseless_witness = witness_from_records(exact, geometry, spec);

    const std::size_t n_settings = exact.records.size();
    std::vector<std::vector<std::uint64_t>> counts(n_settings);
    report.settings.resize(n_settings);
    RecordSet noisy = exact;
    noisy.seed = model.seed;
    parallel_for(n_settings, [&](std::size_t i) {
        const auto& rec = exact.records[i];
        Calibration cal = calibrate(rec, state.n_sites(), model);
        counts[i] = sample_counts(cal.rate, model, i);
        NoisyEstimate rate = estimate_intensity(counts[i], model);
        double count_mean = rate.value * model.efficiency * model.window;
        auto [intensity, variance] = counts_to_intensity(count_mean, cal.reference, model);

        SettingCounts& sc = report.settings[i];
        sc.setting = rec.setting;
        sc.true_intensity = rec.intensity;
        sc.lambda = model.efficiency * cal.rate * model.window;
        sc.count_mean = count_mean;
        double scale = model.efficiency * model.window;
        sc.count_variance = rate.std_error_defined ? std::pow(rate.std_error * scale, 2) * static_cast<double>(model.shots) : 0.0;
        sc.intensity = rate;
        const double to_intensity = cal.reference / model.mean_photons;
        sc.intensity.value = rate.value * to_intensity;
        sc.intensity.std_error = rate.std_error * to_intensity;

        noisy.records[i].intensity = intensity;
        noisy.records[i].variance = variance;
        noisy.records[i].output_intensity = 0;
    });

    WitnessReconstruction w = witness_estimate_from_records(noisy, geometry, spec);
    report.witness.value = w.value;
    report.witness.std_error = std::sqrt(std::max(w.variance, 0.0));
    report.witness.n_shots = model.shots * n_settings;
    report.witness.std_error_defined = true;
    for (const auto& d : designs) report.solutions.push_back(solve_symmetrized(noisy, d.phase_per_site));

    if (model.bootstrap_resamples > 0) {
        const auto resamples = static_cast<std::size_t>(model.bootstrap_resamples);
        std::vector<double> values(resamples);
        parallel_for(resamples, [&](std::size_t b) {
            RecordSet boot = noisy;
            Philox4x32 engine(model.seed, n_settings + b);
            for (std::size_t i = 0; i < n_settings; ++i) {
                std::uniform_int_distribution<std::size_t> pick(0, counts[i].size() - 1);
                double total = 0;
                for (std::size_t k = 0; k < counts[i].size(); ++k) total += static_cast<double>(counts[i][pick(engine)]);
                double count_mean = total / static_cast<double>(counts[i].size());
                Calibration cal = calibrate(exact.records[i], state.n_sites(), model);
                auto [intensity, variance] = counts_to_intensity(count_mean, cal.reference, model);
                boot.records[i].intensity = intensity;
                boot.records[i].variance = variance;
            }
            values[b] = witness_from_records(boot, geometry, spec);
        });
        double mean = 0;
        for (double v : values) mean += v;
        mean /= static_cast<double>(resamples);
        double ss = 0;
        for (double v : values) ss += (v - mean) * (v - mean);
        report.bootstrap_std_error = resamples > 1 ? std::sqrt(ss / static_cast<double>(resamples - 1)) : 0.0;
    }
    return report;
}

NoiseReport noisy_witness_pipeline(const SpinState& state, const ChainGeometry& geometry,
                                   const DesignOptions& design, const DetectionModel& model, const WitnessSpec& spec) {
    return noisy_witness_pipeline(MixedState(state), geometry, design, model, spec);
}

}  // namespace braggwit
