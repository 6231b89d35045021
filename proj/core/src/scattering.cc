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

#include "braggwit/scattering.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "braggwit/errors.h"
#include "braggwit/state_io.h"
#include "braggwit/structure_factor.h"

namespace braggwit {

void LaserCavitySettings::validate() const {
    if (!(detuning != 0) || !std::isfinite(detuning)) throw DomainError("detuning Delta must be nonzero");
    if (!(cavity_linewidth > 0)) throw DomainError("cavity linewidth kappa must be positive");
    if (!(rabi_0 >= 0) || !(rabi_1 >= 0)) throw DomainError("Rabi frequencies must be non-negative");
    if (!(atomic_linewidth >= 0)) throw DomainError("atomic linewidth gamma must be non-negative");
    if (!std::isfinite(phase) || !std::isfinite(vacuum_rabi) || !std::isfinite(cavity_detuning)) {
        throw DomainError("laser/cavity settings must be finite");
    }
}

double LaserCavitySettings::alpha_0() const { return vacuum_rabi * rabi_0 / detuning; }
double LaserCavitySettings::alpha_1() const { return vacuum_rabi * rabi_1 / detuning; }
double LaserCavitySettings::shifted_cavity_detuning() const {
    return cavity_detuning + vacuum_rabi * vacuum_rabi / detuning;
}

CouplingCoefficients coupling_coefficients(double alpha_0, double alpha_1, double phase) {
    complex u = std::polar(1.0, phase) * alpha_0;
    complex v = std::polar(1.0, -phase) * alpha_1;
    return {(u + v) / 2.0, complex(0, 1) * (u - v) / 2.0};
}

CouplingCoefficients coupling_coefficients(const LaserCavitySettings& settings) {
    settings.validate();
    return coupling_coefficients(settings.alpha_0(), settings.alpha_1(), settings.phase);
}

// ---------------------------------------------------------------------------
// Pulse profiles

PulseProfile::PulseProfile(PulseShape shape, double duration, std::vector<std::pair<double, double>> samples)
    : shape_(shape), duration_(duration), samples_(std::move(samples)) {}

PulseProfile PulseProfile::square(double duration) {
    if (!(duration > 0) || !std::isfinite(duration)) throw DomainError("pulse duration must be positive");
    return PulseProfile(PulseShape::square, duration, {});
}

PulseProfile PulseProfile::gaussian_truncated(double duration) {
    if (!(duration > 0) || !std::isfinite(duration)) throw DomainError("pulse duration must be positive");
    return PulseProfile(PulseShape::gaussian_truncated, duration, {});
}

PulseProfile PulseProfile::custom_sampled(std::vector<std::pair<double, double>> samples) {
    if (samples.size() < 2) throw DomainError("custom pulse needs at least two samples");
    if (!(samples.front().first >= 0)) throw DomainError("custom pulse must vanish before t = 0");
    double peak = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second)) {
            throw DomainError("custom pulse samples must be finite");
        }
        if (i > 0 && !(samples[i].first > samples[i - 1].first)) {
            throw DomainError("custom pulse times must be strictly increasing");
        }
        peak = std::max(peak, std::abs(samples[i].second));
    }
    if (std::abs(peak - 1.0) > 1e-12) throw DomainError("custom pulse must have max |rho| = 1");
    double duration = samples.back().first;
    return PulseProfile(PulseShape::custom_sampled, duration, std::move(samples));
}

double PulseProfile::envelope(double t) const {
    switch (shape_) {
        case PulseShape::square:
            return (t >= 0 && t <= duration_) ? 1.0 : 0.0;
        case PulseShape::gaussian_truncated: {
            if (t < 0 || t > duration_) return 0.0;
            double sigma = duration_ / 6.0;
            double x = (t - duration_ / 2.0) / sigma;
            return std::exp(-0.5 * x * x);
        }
        case PulseShape::custom_sampled: {
            if (t < samples_.front().first || t > samples_.back().first) return 0.0;
            auto it = std::upper_bound(samples_.begin(), samples_.end(), t,
                                       [](double v, const auto& s) { return v < s.first; });
            if (it == samples_.end()) return samples_.back().second;
            auto prev = std::prev(it);
            double w = (t - prev->first) / (it->first - prev->first);
            return prev->second + w * (it->second - prev->second);
        }
    }
    return 0.0;
}

std::vector<double> PulseProfile::breakpoints() const {
    if (shape_ != PulseShape::custom_sampled) return {0.0, duration_};
    std::vector<double> points;
    for (const auto& s : samples_) points.push_back(s.first);
    return points;
}

std::string to_string(PulseShape shape) {
    switch (shape) {
        case PulseShape::square: return "square";
        case PulseShape::gaussian_truncated: return "gaussian_truncated";
        case PulseShape::custom_sampled: return "custom_sampled";
    }
    return "unknown";
}

PulseShape parse_pulse_shape(const std::string& name) {
    if (name == "square") return PulseShape::square;
    if (name == "gaussian_truncated" || name == "gaussian") return PulseShape::gaussian_truncated;
    if (name == "custom_sampled" || name == "custom") return PulseShape::custom_sampled;
    throw DomainError("unknown pulse shape '" + name + "'");
}

complex pulse_response(const PulseProfile& profile, const LaserCavitySettings& settings, double t) {
    settings.validate();
    if (!(t >= 0) || !std::isfinite(t)) throw DomainError("pulse_response needs t >= 0");
    if (t == 0) return {0, 0};
    const double kappa = settings.cavity_linewidth;
    const double shift = settings.shifted_cavity_detuning();

    std::vector<double> cuts{0.0};
    for (double b : profile.breakpoints()) {
        if (b > 0 && b < t) cuts.push_back(b);
    }
    cuts.push_back(t);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 15>;
    constexpr unsigned kMaxDepth = 30;
    constexpr double kRelativeTolerance = 1e-12;
    constexpr double kAbsoluteTolerance = 1e-10;

    double re = 0, im = 0, re_error = 0, im_error = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        double a = cuts[i], b = cuts[i + 1];
        // Gauss-Kronrod nodes are interior, so jumps at piece ends are never sampled.
        auto rho = [&](double tau) { return profile.envelope(tau); };
        auto kernel_re = [&](double tau) {
            double s = t - tau;
            return std::exp(-kappa * s) * std::cos(shift * s) * rho(tau);
        };
        auto kernel_im = [&](double tau) {
            double s = t - tau;
            return std::exp(-kappa * s) * std::sin(shift * s) * rho(tau);
        };
        double err_r = 0, err_i = 0;
        re += Quadrature::integrate(kernel_re, a, b, kMaxDepth, kRelativeTolerance, &err_r);
        im += Quadrature::integrate(kernel_im, a, b, kMaxDepth, kRelativeTolerance, &err_i);
        re_error += err_r;
        im_error += err_i;
    }
    if (!(re_error <= kAbsoluteTolerance) || !(im_error <= kAbsoluteTolerance)) {
        throw NumericalError("pulse_response quadrature did not converge at t = " + format_double(t) +
                             ": error estimates (re " + format_double(re_error) + ", im " +
                             format_double(im_error) + ") exceed 1e-10 over " +
                             std::to_string(cuts.size() - 1) + " pieces");
    }
    // f = i (re + i im)
    return {-im, re};
}

complex square_pulse_response(double duration, const LaserCavitySettings& settings, double t) {
    settings.validate();
    if (!(t >= 0)) throw DomainError("pulse_response needs t >= 0");
    const complex z(settings.cavity_linewidth, -settings.shifted_cavity_detuning());
    const complex i(0, 1);
    double on = std::min(t, duration);
    complex f_on = i * (1.0 - std::exp(-z * on)) / z;
    if (t <= duration) return f_on;
    return std::exp(-z * (t - duration)) * f_on;
}

// ---------------------------------------------------------------------------
// Channels and intensities

std::string to_string(ScatteringChannel channel) { return channel == ScatteringChannel::mode1 ? "mode1" : "mode2"; }

ScatteringChannel parse_channel(const std::string& name) {
    if (name == "mode1") return ScatteringChannel::mode1;
    if (name == "mode2") return ScatteringChannel::mode2;
    throw DomainError("unknown scattering channel '" + name + "'");
}

WaveVector transferred_wavevector(ScatteringChannel channel, const BeamGeometry& beams) {
    return WaveVector(channel == ScatteringChannel::mode1 ? Vec3(beams.pump - beams.probe)
                                                          : Vec3(beams.pump + beams.probe));
}

IntensityResult intensity_components(const CorrelationTable& table, const ChainGeometry& geometry,
                                     const CouplingCoefficients& coeffs, const WaveVector& q) {
    if (table.n_sites() != geometry.n_sites()) throw DomainError("state and geometry site counts differ");
    const int n = table.n_sites();
    const double p = q.phase_per_site(geometry);
    const double wx = std::norm(coeffs.alpha_x);
    const double wy = std::norm(coeffs.alpha_y);
    const complex cxy = std::conj(coeffs.alpha_x) * coeffs.alpha_y;
    const complex cyx = coeffs.alpha_x * std::conj(coeffs.alpha_y);

    IntensityResult r;
    r.i0 = n * (wx + wy) + coeffs.polarization_weight() * table.single_sum(PauliAxis::Z);

    complex interference{0, 0};
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            if (k == l) continue;
            complex term = wx * table.pair(k, PauliAxis::X, l, PauliAxis::X) +
                           wy * table.pair(k, PauliAxis::Y, l, PauliAxis::Y) +
                           cxy * table.pair(k, PauliAxis::X, l, PauliAxis::Y) +
                           cyx * table.pair(k, PauliAxis::Y, l, PauliAxis::X);
            interference += std::polar(1.0, -p * (k - l)) * term;
        }
    }
    double scale = std::max(1.0, (wx + wy) * n * n);
    r.i_int = real_or_throw(interference, "I_int", 1e-10 * scale);
    return r;
}

IntensityResult intensity_components(const SpinState& state, const ChainGeometry& geometry,
                                     const CouplingCoefficients& coeffs, const WaveVector& q) {
    return intensity_components(CorrelationTable::from(state), geometry, coeffs, q);
}

IntensityResult intensity_components(const MixedState& state, const ChainGeometry& geometry,
                                     const CouplingCoefficients& coeffs, const WaveVector& q) {
    return intensity_components(CorrelationTable::from(state), geometry, coeffs, q);
}

namespace {

double apply_source_norm(const SpinState& state, const ChainGeometry& geometry, complex lower, complex raise,
                         const WaveVector& q) {
    if (state.n_sites() != geometry.n_sites()) throw DomainError("state and geometry site counts differ");
    const double p = q.phase_per_site(geometry);
    auto amps = state.amplitudes();
    std::vector<complex> out(amps.size());
    for (int j = 0; j < state.n_sites(); ++j) {
        const complex site_phase = std::polar(1.0, p * j);
        const complex lo = lower * site_phase;
        const complex hi = raise * site_phase;
        const std::size_t mask = std::size_t{1} << j;
        for (std::size_t b = 0; b < amps.size(); ++b) {
            if (b & mask) {
                out[b ^ mask] += lo * amps[b];  // |0><1|
            } else {
                out[b | mask] += hi * amps[b];  // |1><0|
            }
        }
    }
    double s = 0;
    for (const auto& a : out) s += std::norm(a);
    return s;
}

}  // namespace

double direct_intensity_oracle(const SpinState& state, const ChainGeometry& geometry,
                               const LaserCavitySettings& settings, const WaveVector& q) {
    settings.validate();
    return apply_source_norm(state, geometry, std::polar(settings.alpha_0(), settings.phase),
                             std::polar(settings.alpha_1(), -settings.phase), q);
}

double direct_intensity_oracle(const MixedState& state, const ChainGeometry& geometry,
                               const LaserCavitySettings& settings, const WaveVector& q) {
    double s = 0;
    for (const auto& c : state.components()) s += c.weight * direct_intensity_oracle(c.state, geometry, settings, q);
    return s;
}

double direct_intensity_oracle(const SpinState& state, const ChainGeometry& geometry,
                               const CouplingCoefficients& coeffs, const WaveVector& q) {
    const complex i(0, 1);
    return apply_source_norm(state, geometry, coeffs.alpha_x - i * coeffs.alpha_y, coeffs.alpha_x + i * coeffs.alpha_y,
                             q);
}

double direct_intensity_oracle(const MixedState& state, const ChainGeometry& geometry,
                               const CouplingCoefficients& coeffs, const WaveVector& q) {
    double s = 0;
    for (const auto& c : state.components()) s += c.weight * direct_intensity_oracle(c.state, geometry, coeffs, q);
    return s;
}

// ---------------------------------------------------------------------------
// Regime validity

bool RegimeReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const RegimeCheck& c) { return c.pass; });
}

std::vector<std::string> RegimeReport::failures() const {
    std::vector<std::string> out;
    for (const auto& c : checks) {
        if (!c.pass) out.push_back(c.name + " (ratio " + format_double(c.ratio) + " < " + format_double(threshold) + ")");
    }
    return out;
}

RegimeReport check_regime(const LaserCavitySettings& settings, const PulseProfile& profile, double ratio_threshold) {
    settings.validate();
    RegimeReport report;
    report.threshold = ratio_threshold;
    auto add = [&](std::string name, double lhs, double rhs) {
        RegimeCheck c{std::move(name), lhs, rhs, 0, false};
        c.ratio = rhs == 0 ? std::numeric_limits<double>::infinity() : lhs / rhs;
        c.pass = c.ratio >= ratio_threshold;
        report.checks.push_back(std::move(c));
    };
    const double delta = std::abs(settings.detuning);
    add("|Delta| >> g", delta, std::abs(settings.vacuum_rabi));
    add("|Delta| >> Omega_0", delta, settings.rabi_0);
    add("|Delta| >> Omega_1", delta, settings.rabi_1);
    add("|Delta| >> |delta_c|", delta, std::abs(settings.cavity_detuning));
    add("|Delta| >> kappa", delta, settings.cavity_linewidth);
    add("|Delta| >> gamma", delta, settings.atomic_linewidth);
    add("kappa >> |alpha_0|", settings.cavity_linewidth, std::abs(settings.alpha_0()));
    add("kappa >> |alpha_1|", settings.cavity_linewidth, std::abs(settings.alpha_1()));
    add("Delta_t |Delta| >> 1", profile.duration() * delta, 1.0);
    return report;
}

IntensityResult output_intensity(const CorrelationTable& table, const ChainGeometry& geometry,
                                 const LaserCavitySettings& settings, const PulseProfile& profile,
                                 ScatteringChannel channel, const BeamGeometry& beams, double t,
                                 const RegimeOptions& options) {
    RegimeReport regime = check_regime(settings, profile, options.ratio_threshold);
    if (!regime.all_pass() && !options.allow_violation) {
        std::string msg = "regime check failed:";
        for (const auto& f : regime.failures()) msg += " [" + f + "]";
        throw RegimeError(msg);
    }
    IntensityResult r =
        intensity_components(table, geometry, coupling_coefficients(settings), transferred_wavevector(channel, beams));
    complex f = pulse_response(profile, settings, t);
    r.t = t;
    r.i_out = 2.0 * settings.cavity_linewidth * std::norm(f) * r.normalized();
    r.regime_overridden = !regime.all_pass();
    return r;
}

IntensityResult output_intensity(const SpinState& state, const ChainGeometry& geometry,
                                 const LaserCavitySettings& settings, const PulseProfile& profile,
                                 ScatteringChannel channel, const BeamGeometry& beams, double t,
                                 const RegimeOptions& options) {
    return output_intensity(CorrelationTable::from(state), geometry, settings, profile, channel, beams, t, options);
}

// ---------------------------------------------------------------------------
// Basis rotations and geometry checks

std::string to_string(RotationTag tag) {
    switch (tag) {
        case RotationTag::none: return "none";
        case RotationTag::x_access: return "x_access";
        case RotationTag::y_access: return "y_access";
    }
    return "unknown";
}

RotationTag parse_rotation(const std::string& name) {
    if (name == "none") return RotationTag::none;
    if (name == "x_access") return RotationTag::x_access;
    if (name == "y_access") return RotationTag::y_access;
    throw DomainError("unknown rotation tag '" + name + "'");
}

Mat2 hadamard_rotation(RotationTag tag) {
    switch (tag) {
        case RotationTag::x_access:
            return (pauli_matrix(PauliAxis::X) + pauli_matrix(PauliAxis::Z)) / std::numbers::sqrt2;
        case RotationTag::y_access:
            return (pauli_matrix(PauliAxis::Y) + pauli_matrix(PauliAxis::Z)) / std::numbers::sqrt2;
        default:
            return Mat2::Identity();
    }
}

bool check_commensurability(const ChainGeometry& geometry, const Vec3& probe_wavevector, double tolerance) {
    if (!(tolerance > 0)) throw DomainError("commensurability tolerance must be positive");
    double x = geometry.spacing() * geometry.axis().dot(probe_wavevector);
    return std::abs(std::remainder(x, 2.0 * std::numbers::pi)) <= tolerance;
}

}  // namespace braggwit
