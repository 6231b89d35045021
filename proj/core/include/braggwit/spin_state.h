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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "braggwit/pauli.h"

namespace braggwit {

inline constexpr int kDefaultMaxSites = 16;

/// Pure N-qubit state as a dense amplitude vector.
///
/// Basis ordering: bit j of the basis index is the state of site j (site 0 is
/// the least significant bit). Bit value 0 is |0>, the +1 eigenstate of Z.
/// Instances are immutable once constructed.
class SpinState {
   public:
    /// Validates size (2^n_sites), site range, and normalization (1e-12).
    SpinState(int n_sites, std::vector<complex> amplitudes, int max_sites = kDefaultMaxSites);

    int n_sites() const { return n_sites_; }
    std::size_t dim() const { return amplitudes_.size(); }
    std::span<const complex> amplitudes() const { return amplitudes_; }
    complex amplitude(std::size_t basis_index) const { return amplitudes_[basis_index]; }
    double norm() const;

   private:
    int n_sites_;
    std::vector<complex> amplitudes_;
};

/// Convex mixture of pure states, standing in for a density matrix.
class MixedState {
   public:
    struct Component {
        double weight;
        SpinState state;
    };

    /// Weights must lie in (0, 1] and sum to 1 within 1e-12; all states share n_sites.
    explicit MixedState(std::vector<Component> components);
    /// A pure state as a single-component ensemble.
    explicit MixedState(SpinState pure);

    int n_sites() const { return components_.front().state.n_sites(); }
    std::span<const Component> components() const { return components_; }

   private:
    std::vector<Component> components_;
};

SpinState build_dicke(int n_sites, int n_excitations);
SpinState build_ghz(int n_sites);
SpinState build_w(int n_sites);
/// One (theta, phi) Bloch pair per site: cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
SpinState build_product(std::span<const std::pair<double, double>> bloch_angles);
/// Haar-random pure state (normalized complex Gaussian amplitudes).
SpinState build_random_pure(int n_sites, std::uint64_t seed);
/// Random convex mixture of n_components product states with uniformly
/// distributed Bloch vectors.
MixedState build_random_separable(int n_sites, int n_components, std::uint64_t seed);

/// <sigma_k^a sigma_l^b>. Pass PauliAxis::I in one slot for single-site averages.
complex expect_two_site(const SpinState& state, int site_k, PauliAxis axis_a, int site_l, PauliAxis axis_b);
complex expect_two_site(const MixedState& state, int site_k, PauliAxis axis_a, int site_l, PauliAxis axis_b);

/// Applies the 2x2 unitary u to each listed site. No sites means every site.
SpinState apply_single_qubit_unitary(const SpinState& state, const Mat2& u, std::span<const int> sites = {});
MixedState apply_single_qubit_unitary(const MixedState& state, const Mat2& u, std::span<const int> sites = {});

/// All one- and two-site Pauli expectations of a state.
///
/// Every product sigma_k^a sigma_l^b with k != l is Hermitian, so the table
/// stores real values; the imaginary residuals seen while filling it are
/// kept in max_imag_residual for diagnostics.
class CorrelationTable {
   public:
    static CorrelationTable from(const SpinState& state);
    static CorrelationTable from(const MixedState& state);

    int n_sites() const { return n_sites_; }
    /// <sigma_k^a sigma_l^b>, k != l, a and b spatial axes.
    double pair(int k, PauliAxis a, int l, PauliAxis b) const {
        return pairs_[index(k, a, l, b)];
    }
    /// <sigma_k^a>.
    double single(int k, PauliAxis a) const { return singles_[static_cast<std::size_t>(k) * 3 + axis_index(a)]; }
    /// sum_k <sigma_k^a>.
    double single_sum(PauliAxis a) const;
    double max_imag_residual() const { return max_imag_residual_; }

   private:
    explicit CorrelationTable(int n_sites);
    std::size_t index(int k, PauliAxis a, int l, PauliAxis b) const {
        auto n = static_cast<std::size_t>(n_sites_);
        return ((static_cast<std::size_t>(k) * n + static_cast<std::size_t>(l)) * 3 + axis_index(a)) * 3 +
               axis_index(b);
    }
    void accumulate(const SpinState& state, double weight);

    int n_sites_;
    std::vector<double> pairs_;
    std::vector<double> singles_;
    double max_imag_residual_ = 0;
};

}  // namespace braggwit
