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

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "braggwit/geometry.h"
#include "braggwit/spin_state.h"

namespace braggwit {

/// Pump lasers and cavity parameters, all in one consistent frequency unit.
///
/// Derived rates are computed on access so they can never go stale.
struct LaserCavitySettings {
    double rabi_0 = 1;            // Omega_0, drives |1> -> |e0>
    double rabi_1 = 1;            // Omega_1, drives |0> -> |e1>
    double phase = 0;             // phi
    double vacuum_rabi = 1;       // g
    double detuning = 100;        // Delta = omega_L - omega_0, nonzero
    double cavity_detuning = 0;   // delta_c = omega_L - omega_c
    double cavity_linewidth = 1;  // kappa > 0
    double atomic_linewidth = 0;  // gamma >= 0

    /// Throws DomainError on Delta == 0, kappa <= 0, negative Rabi frequencies or gamma.
    void validate() const;

    double alpha_0() const;
    double alpha_1() const;
    /// delta_c' = delta_c + g^2 / Delta (includes the dynamical Stark shift).
    double shifted_cavity_detuning() const;
};

/// Complex weights of sigma^x and sigma^y in the scattered-field source term
/// B = sum_j (alpha_x sigma_j^x + alpha_y sigma_j^y) e^{i q.r_j}.
struct CouplingCoefficients {
    complex alpha_x{0, 0};
    complex alpha_y{0, 0};

    /// N(|alpha_x|^2 + |alpha_y|^2): the incoherent part of I0.
    double incoherent_weight() const { return std::norm(alpha_x) + std::norm(alpha_y); }
    /// 2 Im(alpha_x alpha_y^*): weight of sum_k <sigma_k^z> in I0.
    double polarization_weight() const { return 2.0 * std::imag(alpha_x * std::conj(alpha_y)); }
};

/// From the source term alpha_0 e^{i phi} S_j + alpha_1 e^{-i phi} S_j^dagger with
/// S_j = |0><1|:
///   alpha_x = (alpha_0 e^{i phi} + alpha_1 e^{-i phi}) / 2
///   alpha_y = i (alpha_0 e^{i phi} - alpha_1 e^{-i phi}) / 2
/// This is the other common display of the same map with phi -> -phi.
CouplingCoefficients coupling_coefficients(const LaserCavitySettings& settings);
CouplingCoefficients coupling_coefficients(double alpha_0, double alpha_1, double phase);

enum class PulseShape { square, gaussian_truncated, custom_sampled };

/// Temporal envelope rho(t): zero before t = 0 and after the pulse, max |rho| = 1.
class PulseProfile {
   public:
    static PulseProfile square(double duration);
    /// exp(-(t - T/2)^2 / (2 (T/6)^2)) on [0, T].
    static PulseProfile gaussian_truncated(double duration);
    /// Piecewise-linear through (t, rho) samples; times strictly increasing,
    /// first time >= 0, max |rho| == 1 within 1e-12. Zero outside the samples.
    static PulseProfile custom_sampled(std::vector<std::pair<double, double>> samples);

    PulseShape shape() const { return shape_; }
    double duration() const { return duration_; }
    const std::vector<std::pair<double, double>>& samples() const { return samples_; }

    double envelope(double t) const;
    /// Points where the envelope or its derivative may be discontinuous.
    std::vector<double> breakpoints() const;

   private:
    PulseProfile(PulseShape shape, double duration, std::vector<std::pair<double, double>> samples);

    PulseShape shape_;
    double duration_;
    std::vector<std::pair<double, double>> samples_;
};

std::string to_string(PulseShape shape);
PulseShape parse_pulse_shape(const std::string& name);

/// f(t) = i int_0^t e^{-(kappa - i delta_c')(t - tau)} rho(tau) dtau, by adaptive
/// Gauss-Kronrod quadrature on each smooth piece. Throws NumericalError if the
/// error estimate on either the real or imaginary part exceeds 1e-10.
complex pulse_response(const PulseProfile& profile, const LaserCavitySettings& settings, double t);

/// Closed form for a square pulse of the given duration: i(1 - e^{-z t})/z with
/// z = kappa - i delta_c' while the pulse is on, exponential ring-down after.
complex square_pulse_response(double duration, const LaserCavitySettings& settings, double t);

enum class ScatteringChannel { mode1, mode2 };

std::string to_string(ScatteringChannel channel);
ScatteringChannel parse_channel(const std::string& name);

/// Pump and probe (cavity mode 1) wave vectors.
struct BeamGeometry {
    Vec3 pump = Vec3::Zero();
    Vec3 probe = Vec3::Zero();
};

/// q1 = k_L - k for mode1, q2 = k_L + k for mode2 (mode 2 propagates along -k).
WaveVector transferred_wavevector(ScatteringChannel channel, const BeamGeometry& beams);

struct IntensityResult {
    double i0 = 0;
    double i_int = 0;
    double i_out = 0;
    double t = 0;
    bool regime_overridden = false;

    double normalized() const { return i0 + i_int; }
};

/// I0 = N(|alpha_x|^2 + |alpha_y|^2) + 2 Im(alpha_x alpha_y^*) sum_k <sigma_k^z>
/// I_int = sum_{k != l} e^{-i q.(r_k - r_l)} [ |alpha_x|^2 <xx> + |alpha_y|^2 <yy>
///                                          + alpha_x^* alpha_y <xy> + alpha_x alpha_y^* <yx> ]
/// i_out is left at zero.
IntensityResult intensity_components(const CorrelationTable& table, const ChainGeometry& geometry,
                                     const CouplingCoefficients& coeffs, const WaveVector& q);
IntensityResult intensity_components(const SpinState& state, const ChainGeometry& geometry,
                                     const CouplingCoefficients& coeffs, const WaveVector& q);
IntensityResult intensity_components(const MixedState& state, const ChainGeometry& geometry,
                                     const CouplingCoefficients& coeffs, const WaveVector& q);

/// <B^dagger B> by applying B = sum_j (u S_j + v S_j^dagger) e^{i q.r_j} to the
/// amplitude vector, with u = alpha_0 e^{i phi}, v = alpha_1 e^{-i phi}.
double direct_intensity_oracle(const SpinState& state, const ChainGeometry& geometry,
                               const LaserCavitySettings& settings, const WaveVector& q);
double direct_intensity_oracle(const MixedState& state, const ChainGeometry& geometry,
                               const LaserCavitySettings& settings, const WaveVector& q);
/// Same, with u = alpha_x - i alpha_y and v = alpha_x + i alpha_y recovered from coeffs.
double direct_intensity_oracle(const SpinState& state, const ChainGeometry& geometry,
                               const CouplingCoefficients& coeffs, const WaveVector& q);
double direct_intensity_oracle(const MixedState& state, const ChainGeometry& geometry,
                               const CouplingCoefficients& coeffs, const WaveVector& q);

struct RegimeCheck {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;
    bool pass = false;
};

struct RegimeReport {
    double threshold = 10;
    std::vector<RegimeCheck> checks;

    bool all_pass() const;
    std::vector<std::string> failures() const;
};

/// Each "much greater than" is tested as lhs / rhs >= threshold.
RegimeReport check_regime(const LaserCavitySettings& settings, const PulseProfile& profile,
                          double ratio_threshold = 10.0);

struct RegimeOptions {
    double ratio_threshold = 10.0;
    bool allow_violation = false;
};

/// I_out = 2 kappa |f(t)|^2 (I0 + I_int) on the given channel.
/// Throws RegimeError listing the failed inequalities unless allow_violation is set.
IntensityResult output_intensity(const CorrelationTable& table, const ChainGeometry& geometry,
                                 const LaserCavitySettings& settings, const PulseProfile& profile,
                                 ScatteringChannel channel, const BeamGeometry& beams, double t,
                                 const RegimeOptions& options = {});
IntensityResult output_intensity(const SpinState& state, const ChainGeometry& geometry,
                                 const LaserCavitySettings& settings, const PulseProfile& profile,
                                 ScatteringChannel channel, const BeamGeometry& beams, double t,
                                 const RegimeOptions& options = {});

enum class RotationTag { none, x_access, y_access };

std::string to_string(RotationTag tag);
RotationTag parse_rotation(const std::string& name);

/// x_access: (sigma^x + sigma^z)/sqrt2, exchanges x and z and flips y.
/// y_access: (sigma^y + sigma^z)/sqrt2, exchanges y and z and flips x.
/// none: identity.
Mat2 hadamard_rotation(RotationTag tag);

/// True iff d (axis . k) is within tolerance of a multiple of 2 pi.
bool check_commensurability(const ChainGeometry& geometry, const Vec3& probe_wavevector, double tolerance);

}  // namespace braggwit
