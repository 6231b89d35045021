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

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "braggwit/geometry.h"
#include "braggwit/scattering.h"
#include "braggwit/spin_state.h"
#include "braggwit/structure_factor.h"

namespace braggwit {

/// One point of a measurement design: drive amplitudes and phase, the basis
/// rotation applied to the spins beforehand, the cavity mode read out, and the
/// interference phase q.(d axis) seen by that mode.
struct MeasurementSetting {
    double rabi_0 = 0;
    double rabi_1 = 0;
    double phase = 0;
    RotationTag rotation = RotationTag::none;
    ScatteringChannel channel = ScatteringChannel::mode1;
    double phase_per_site = 0;
    CouplingCoefficients coeffs;
};

/// Builds a setting whose coefficients follow from g and Delta in base.
MeasurementSetting make_setting(const LaserCavitySettings& base, double rabi_0, double rabi_1, double phase,
                                RotationTag rotation, ScatteringChannel channel, double phase_per_site);

struct MeasurementRecord {
    MeasurementSetting setting;
    double intensity = 0;         // normalized I0 + I_int
    double output_intensity = 0;  // 2 kappa |f(t)|^2 (I0 + I_int)
    double time = 0;
    double variance = 0;  // of intensity; 0 means unknown
};

struct RecordSet {
    int n_sites = 0;
    double vacuum_rabi = 1;
    double detuning = 100;
    std::uint64_t seed = 0;
    std::string config_hash;
    std::vector<MeasurementRecord> records;
};

/// Real unknowns of the inverse problem at one phase: the symmetrized
/// correlators T^{ab}(q) = sum_{k != l} e^{-i q.(r_k - r_l)} <sigma_k^a sigma_l^b>
/// (diagonal real; upper triangle split into Re/Im; lower triangle by T^{ba} = conj T^{ab})
/// and the single-spin sums sum_k <sigma_k^a>.
enum class Unknown : int {
    Txx, Tyy, Tzz, ReTxy, ImTxy, ReTxz, ImTxz, ReTyz, ImTyz, Sx, Sy, Sz
};
inline constexpr int kUnknownCount = 12;
std::string to_string(Unknown u);

struct Design {
    double phase_per_site = 0;
    std::vector<MeasurementSetting> settings;
    std::vector<Unknown> columns;
    Eigen::MatrixXd matrix;  // rows: settings, columns: unknowns
    double condition_number = 0;
};

/// Default design at one phase: Omega_0 = Omega_1 with phi in {0, pi/4, pi/2, 3pi/4},
/// plus Omega_1 = 0 and Omega_0 = 0, each read out on mode 1 (phase p) and on
/// mode 2 (phase -p, pump transverse to the chain). With rotations, the same
/// twelve rows are repeated in the x_access and y_access frames.
/// Throws DesignError if any frame's condition number exceeds condition_cap.
Design design_settings(double phase_per_site, bool include_rotations, const LaserCavitySettings& base = {},
                       double condition_cap = 1e6);

/// T^{ab}(q) for all nine pairs; available marks entries determined by the data.
struct SymmetrizedCorrelators {
    double phase_per_site = 0;
    std::array<complex, 9> entries{};
    std::array<bool, 9> available{};

    complex& at(PauliAxis a, PauliAxis b) { return entries[axis_index(a) * 3 + axis_index(b)]; }
    const complex& at(PauliAxis a, PauliAxis b) const { return entries[axis_index(a) * 3 + axis_index(b)]; }
    bool has(PauliAxis a, PauliAxis b) const { return available[axis_index(a) * 3 + axis_index(b)]; }
};

/// Direct evaluation of T^{ab}(q) from a state's correlations (forward reference).
SymmetrizedCorrelators symmetrized_correlators(const CorrelationTable& table, double phase_per_site);

struct SingleSpinSums {
    std::array<double, 3> sums{};
    std::array<bool, 3> available{};
    std::array<double, 3> variance{};
};

struct SolveOptions {
    double condition_cap = 1e6;
    double phase_tolerance = 1e-9;
};

struct SymmetrizedSolution {
    SymmetrizedCorrelators correlators;
    SingleSpinSums singles;
    std::vector<Unknown> columns;
    Eigen::VectorXd values;      // over columns
    Eigen::MatrixXd covariance;  // over columns
    double condition_number = 0;
    double residual_norm = 0;
    double chi2_per_dof = 0;
    bool weighted = false;
    bool residual_flag = false;
    int n_records = 0;

    /// Index of u in columns, or -1.
    int column_of(Unknown u) const;
};

/// Least-squares inversion of the records whose phase matches +-phase_per_site.
/// Records at -p enter through T^{ab}(-p) = T^{ba}(p). Uses weighted least squares
/// when every matching record carries a variance.
/// Throws DesignError if no records match or a frame is rank deficient.
SymmetrizedSolution solve_symmetrized(const RecordSet& records, double phase_per_site, const SolveOptions& options = {});

/// Distinct phases present in the records, folded into [0, pi] and deduplicated.
std::vector<double> record_phases(const RecordSet& records, double tolerance = 1e-9);

/// sum_k <sigma_k^a> from the I0 terms: z from unrotated records, x and y from
/// the rotated frames. Throws DesignError naming a frame that is present but
/// has no setting with Im(alpha_x alpha_y^*) != 0.
SingleSpinSums single_spin_averages(const RecordSet& records, const SolveOptions& options = {});

/// G^{ab}(m) = sum_k <sigma_k^a sigma_{k+m}^b>, m = 1..N-1.
///
/// A uniform chain only resolves correlations by separation: pairs with the
/// same k - l share the same interference phase, so individual pair
/// correlators are not recoverable from scattered intensities.
struct SeparationCorrelators {
    int n_sites = 0;
    std::vector<std::array<double, 9>> values;  // values[m - 1]
    std::array<bool, 9> available{};
    double cosine_condition = 0;
    double sine_condition = 0;

    double at(int m, PauliAxis a, PauliAxis b) const {
        return values[static_cast<std::size_t>(m - 1)][axis_index(a) * 3 + axis_index(b)];
    }
};

SeparationCorrelators separation_correlators(const CorrelationTable& table);

/// Inverts T^{ab}(p) = sum_m [e^{i p m} G^{ab}(m) + e^{-i p m} G^{ba}(m)] over a phase scan:
/// the cosine system gives G^{ab} + G^{ba}, the sine system G^{ab} - G^{ba}.
/// Phases are folded into [0, pi]. Throws DesignError if fewer than N - 1
/// distinct phases are supplied or a system's condition number exceeds the cap.
SeparationCorrelators scan_to_separations(std::span<const SymmetrizedCorrelators> scan, int n_sites,
                                          double condition_cap = 1e6);

struct TwoBodyRDM {
    int separation = 0;
    /// Basis |a b>, a the left site (more significant), b the right site.
    Eigen::Matrix4cd rho;
    Eigen::Vector4d eigenvalues;
    bool physical = true;
};

/// rho2(m) = 1/4 sum_{mu,nu} c_{mu nu} sigma^mu (x) sigma^nu with pair-averaged
/// correlators G^{ab}(m)/(N - m) and site-averaged singles. Negative eigenvalues
/// below -tolerance clear the physical flag; the matrix is never projected.
TwoBodyRDM two_body_rdm(const SeparationCorrelators& separations, const SingleSpinSums& singles, int separation,
                        double tolerance = 1e-10);

struct WitnessReconstruction {
    double value = 1;
    double variance = 0;
};

/// Structural witness evaluated from reconstructed T^{aa}(q^a) only.
WitnessReconstruction witness_estimate_from_records(const RecordSet& records, const ChainGeometry& geometry,
                                                    const WitnessSpec& spec, const SolveOptions& options = {});
double witness_from_records(const RecordSet& records, const ChainGeometry& geometry, const WitnessSpec& spec,
                            const SolveOptions& options = {});

/// Forward model: one record per setting, computed on the rotated state.
/// i_out = 2 kappa |f(t)|^2 I~ with the supplied pulse-response value f(t).
RecordSet simulate_records(const MixedState& state, const ChainGeometry& geometry, std::span<const Design> designs,
                           const LaserCavitySettings& base, complex pulse_value, double t);
RecordSet simulate_records(const SpinState& state, const ChainGeometry& geometry, std::span<const Design> designs,
                           const LaserCavitySettings& base, complex pulse_value, double t);

struct ReconstructionReport {
    int n_sites = 0;
    std::vector<SymmetrizedSolution> solutions;
    SingleSpinSums singles;
    std::optional<SeparationCorrelators> separations;
    std::string separation_error;
    std::vector<TwoBodyRDM> rdms;
    std::optional<WitnessReconstruction> witness;
    std::optional<WitnessReconstruction> witness_dicke;
};

/// Runs every stage the records support: per-phase solves, singles, separation
/// scan and two-body RDMs when the scan is sufficient, witnesses when requested.
ReconstructionReport reconstruct(const RecordSet& records, const ChainGeometry& geometry,
                                 const std::optional<WitnessSpec>& spec, const SolveOptions& options = {});

}  // namespace braggwit
