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

#include "braggwit/spin_state.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "braggwit/errors.h"
#include "braggwit/parallel.h"
#include "braggwit/rng.h"

namespace braggwit {

namespace {

constexpr double kNormTolerance = 1e-12;

void check_site_count(int n_sites, int max_sites) {
    if (n_sites < 2 || n_sites > max_sites) {
        throw DomainError("n_sites must be in [2, " + std::to_string(max_sites) + "], got " +
                          std::to_string(n_sites));
    }
}

void check_site(int site, int n_sites) {
    if (site < 0 || site >= n_sites) {
        throw DomainError("site " + std::to_string(site) + " out of range [0, " + std::to_string(n_sites) + ")");
    }
}

// sigma^a |b> = phase * |b ^ flip> restricted to one site with bit value v.
struct SiteAction {
    std::size_t flip = 0;
    complex phase0{1, 0};  // acting on bit 0
    complex phase1{1, 0};  // acting on bit 1
};

SiteAction site_action(PauliAxis a, int site) {
    std::size_t mask = std::size_t{1} << site;
    switch (a) {
        case PauliAxis::X: return {mask, {1, 0}, {1, 0}};
        case PauliAxis::Y: return {mask, {0, 1}, {0, -1}};
        case PauliAxis::Z: return {0, {1, 0}, {-1, 0}};
        default: return {0, {1, 0}, {1, 0}};
    }
}

complex expect_pure(const SpinState& state, int k, PauliAxis a, int l, PauliAxis b) {
    auto amps = state.amplitudes();
    SiteAction first = site_action(a, k);
    SiteAction second = site_action(b, l);
    std::size_t flip = first.flip ^ second.flip;
    std::size_t mask_k = std::size_t{1} << k;
    std::size_t mask_l = std::size_t{1} << l;
    complex acc{0, 0};
    for (std::size_t basis = 0; basis < amps.size(); ++basis) {
        complex phase = ((basis & mask_k) ? first.phase1 : first.phase0) *
                        ((basis & mask_l) ? second.phase1 : second.phase0);
        acc += std::conj(amps[basis ^ flip]) * phase * amps[basis];
    }
    return acc;
}

std::vector<complex> normalized(std::vector<complex> v) {
    double n = 0;
    for (const auto& a : v) n += std::norm(a);
    n = std::sqrt(n);
    for (auto& a : v) a /= n;
    return v;
}

}  // namespace

SpinState::SpinState(int n_sites, std::vector<complex> amplitudes, int max_sites)
    : n_sites_(n_sites), amplitudes_(std::move(amplitudes)) {
    check_site_count(n_sites, max_sites);
    if (amplitudes_.size() != (std::size_t{1} << n_sites)) {
        throw DomainError("expected 2^" + std::to_string(n_sites) + " amplitudes, got " +
                          std::to_string(amplitudes_.size()));
    }
    if (std::abs(norm() - 1.0) > kNormTolerance) {
        throw DomainError("state is not normalized (norm " + std::to_string(norm()) + ")");
    }
}

double SpinState::norm() const {
    double s = 0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

MixedState::MixedState(std::vector<Component> components) : components_(std::move(components)) {
    if (components_.empty()) throw DomainError("mixed state needs at least one component");
    double total = 0;
    for (const auto& c : components_) {
        if (!(c.weight > 0 && c.weight <= 1)) throw DomainError("mixture weights must lie in (0, 1]");
        if (c.state.n_sites() != components_.front().state.n_sites()) {
            throw DomainError("mixture components have different site counts");
        }
        total += c.weight;
    }
    if (std::abs(total - 1.0) > kNormTolerance) throw DomainError("mixture weights must sum to 1");
}

MixedState::MixedState(SpinState pure) : components_{{1.0, std::move(pure)}} {}

SpinState build_dicke(int n_sites, int n_excitations) {
    check_site_count(n_sites, kDefaultMaxSites);
    if (n_excitations < 0 || n_excitations > n_sites) {
        throw DomainError("n_excitations must be in [0, n_sites], got " + std::to_string(n_excitations));
    }
    std::vector<complex> amps(std::size_t{1} << n_sites);
    std::size_t count = 0;
    for (std::size_t b = 0; b < amps.size(); ++b) {
        if (std::popcount(b) == n_excitations) ++count;
    }
    double amp = 1.0 / std::sqrt(static_cast<double>(count));
    for (std::size_t b = 0; b < amps.size(); ++b) {
        if (std::popcount(b) == n_excitations) amps[b] = amp;
    }
    return SpinState(n_sites, std::move(amps));
}

SpinState build_ghz(int n_sites) {
    check_site_count(n_sites, kDefaultMaxSites);
    std::vector<complex> amps(std::size_t{1} << n_sites);
    amps.front() = amps.back() = 1.0 / std::numbers::sqrt2;
    return SpinState(n_sites, std::move(amps));
}

SpinState build_w(int n_sites) { return build_dicke(n_sites, 1); }

SpinState build_product(std::span<const std::pair<double, double>> bloch_angles) {
    int n = static_cast<int>(bloch_angles.size());
    check_site_count(n, kDefaultMaxSites);
    std::vector<complex> amps(std::size_t{1} << n, complex{1, 0});
    for (int j = 0; j < n; ++j) {
        auto [theta, phi] = bloch_angles[static_cast<std::size_t>(j)];
        if (!std::isfinite(theta) || !std::isfinite(phi) || theta < 0 || theta > std::numbers::pi) {
            throw DomainError("Bloch angle theta must lie in [0, pi] at site " + std::to_string(j));
        }
        complex up{std::cos(theta / 2), 0};
        complex down = std::polar(std::sin(theta / 2), phi);
        for (std::size_t b = 0; b < amps.size(); ++b) amps[b] *= ((b >> j) & 1U) ? down : up;
    }
    return SpinState(n, normalized(std::move(amps)));
}

SpinState build_random_pure(int n_sites, std::uint64_t seed) {
    check_site_count(n_sites, kDefaultMaxSites);
    Philox4x32 engine(seed);
    std::normal_distribution<double> gauss;
    std::vector<complex> amps(std::size_t{1} << n_sites);
    for (auto& a : amps) {
        double re = gauss(engine);
        a = {re, gauss(engine)};
    }
    return SpinState(n_sites, normalized(std::move(amps)));
}

MixedState build_random_separable(int n_sites, int n_components, std::uint64_t seed) {
    check_site_count(n_sites, kDefaultMaxSites);
    if (n_components < 1) throw DomainError("n_components must be positive");
    Philox4x32 engine(seed);
    std::vector<double> weights(static_cast<std::size_t>(n_components));
    double total = 0;
    for (auto& w : weights) {
        w = 0.05 + uniform01(engine);
        total += w;
    }
    std::vector<MixedState::Component> components;
    std::vector<std::pair<double, double>> angles(static_cast<std::size_t>(n_sites));
    for (int c = 0; c < n_components; ++c) {
        for (auto& [theta, phi] : angles) {
            theta = std::acos(std::clamp(1.0 - 2.0 * uniform01(engine), -1.0, 1.0));
            phi = 2.0 * std::numbers::pi * uniform01(engine);
        }
        components.push_back({weights[static_cast<std::size_t>(c)] / total, build_product(angles)});
    }
    // Renormalize against rounding so the weights sum to one to machine precision.
    double sum = 0;
    for (const auto& c : components) sum += c.weight;
    for (auto& c : components) c.weight /= sum;
    return MixedState(std::move(components));
}

complex expect_two_site(const SpinState& state, int site_k, PauliAxis axis_a, int site_l, PauliAxis axis_b) {
    check_site(site_k, state.n_sites());
    check_site(site_l, state.n_sites());
    if (site_k == site_l) throw DomainError("expect_two_site requires distinct sites");
    return expect_pure(state, site_k, axis_a, site_l, axis_b);
}

complex expect_two_site(const MixedState& state, int site_k, PauliAxis axis_a, int site_l, PauliAxis axis_b) {
    complex acc{0, 0};
    for (const auto& c : state.components()) {
        acc += c.weight * expect_two_site(c.state, site_k, axis_a, site_l, axis_b);
    }
    return acc;
}

SpinState apply_single_qubit_unitary(const SpinState& state, const Mat2& u, std::span<const int> sites) {
    if ((u.adjoint() * u - Mat2::Identity()).cwiseAbs().maxCoeff() > 1e-12) {
        throw DomainError("matrix is not unitary within 1e-12");
    }
    std::vector<int> targets(sites.begin(), sites.end());
    if (targets.empty()) {
        for (int j = 0; j < state.n_sites(); ++j) targets.push_back(j);
    }
    std::vector<complex> amps(state.amplitudes().begin(), state.amplitudes().end());
    for (int site : targets) {
        check_site(site, state.n_sites());
        std::size_t mask = std::size_t{1} << site;
        for (std::size_t b = 0; b < amps.size(); ++b) {
            if (b & mask) continue;
            complex a0 = amps[b];
            complex a1 = amps[b | mask];
            amps[b] = u(0, 0) * a0 + u(0, 1) * a1;
            amps[b | mask] = u(1, 0) * a0 + u(1, 1) * a1;
        }
    }
    return SpinState(state.n_sites(), std::move(amps), std::max(state.n_sites(), kDefaultMaxSites));
}

MixedState apply_single_qubit_unitary(const MixedState& state, const Mat2& u, std::span<const int> sites) {
    std::vector<MixedState::Component> out;
    for (const auto& c : state.components()) out.push_back({c.weight, apply_single_qubit_unitary(c.state, u, sites)});
    return MixedState(std::move(out));
}

CorrelationTable::CorrelationTable(int n_sites)
    : n_sites_(n_sites),
      pairs_(static_cast<std::size_t>(n_sites) * static_cast<std::size_t>(n_sites) * 9, 0.0),
      singles_(static_cast<std::size_t>(n_sites) * 3, 0.0) {}

CorrelationTable CorrelationTable::from(const SpinState& state) {
    CorrelationTable table(state.n_sites());
    table.accumulate(state, 1.0);
    return table;
}

CorrelationTable CorrelationTable::from(const MixedState& state) {
    CorrelationTable table(state.n_sites());
    for (const auto& c : state.components()) table.accumulate(c.state, c.weight);
    return table;
}

void CorrelationTable::accumulate(const SpinState& state, double weight) {
    int n = n_sites_;
    std::vector<std::pair<int, int>> site_pairs;
    for (int k = 0; k < n; ++k) {
        for (int l = k + 1; l < n; ++l) site_pairs.emplace_back(k, l);
    }
    // One slot per (pair, a, b); singles use site l = -1.
    std::vector<complex> values(site_pairs.size() * 9 + static_cast<std::size_t>(n) * 3);
    parallel_for(site_pairs.size() + static_cast<std::size_t>(n), [&](std::size_t job) {
        if (job < site_pairs.size()) {
            auto [k, l] = site_pairs[job];
            for (PauliAxis a : kSpatialAxes) {
                for (PauliAxis b : kSpatialAxes) {
                    values[job * 9 + static_cast<std::size_t>(axis_index(a) * 3 + axis_index(b))] =
                        expect_pure(state, k, a, l, b);
                }
            }
        } else {
            int k = static_cast<int>(job - site_pairs.size());
            int other = k == 0 ? 1 : 0;
            for (PauliAxis a : kSpatialAxes) {
                values[site_pairs.size() * 9 + static_cast<std::size_t>(k * 3 + axis_index(a))] =
                    expect_pure(state, k, a, other, PauliAxis::I);
            }
        }
    });
    for (std::size_t job = 0; job < site_pairs.size(); ++job) {
        auto [k, l] = site_pairs[job];
        for (PauliAxis a : kSpatialAxes) {
            for (PauliAxis b : kSpatialAxes) {
                complex v = values[job * 9 + static_cast<std::size_t>(axis_index(a) * 3 + axis_index(b))];
                max_imag_residual_ = std::max(max_imag_residual_, std::abs(v.imag()));
                pairs_[index(k, a, l, b)] += weight * v.real();
                pairs_[index(l, b, k, a)] += weight * v.real();
            }
        }
    }
    for (int k = 0; k < n; ++k) {
        for (PauliAxis a : kSpatialAxes) {
            complex v = values[site_pairs.size() * 9 + static_cast<std::size_t>(k * 3 + axis_index(a))];
            max_imag_residual_ = std::max(max_imag_residual_, std::abs(v.imag()));
            singles_[static_cast<std::size_t>(k) * 3 + axis_index(a)] += weight * v.real();
        }
    }
}

double CorrelationTable::single_sum(PauliAxis a) const {
    double s = 0;
    for (int k = 0; k < n_sites_; ++k) s += single(k, a);
    return s;
}

PauliAxis parse_axis(std::string_view name) {
    if (name == "x" || name == "X") return PauliAxis::X;
    if (name == "y" || name == "Y") return PauliAxis::Y;
    if (name == "z" || name == "Z") return PauliAxis::Z;
    if (name == "i" || name == "I") return PauliAxis::I;
    throw DomainError("unknown Pauli axis '" + std::string(name) + "'");
}

Mat2 pauli_matrix(PauliAxis a) {
    Mat2 m;
    switch (a) {
        case PauliAxis::X: m << 0, 1, 1, 0; break;
        case PauliAxis::Y: m << 0, complex(0, -1), complex(0, 1), 0; break;
        case PauliAxis::Z: m << 1, 0, 0, -1; break;
        default: m = Mat2::Identity(); break;
    }
    return m;
}

}  // namespace braggwit
