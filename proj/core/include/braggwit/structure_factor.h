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
#include <string>

#include "braggwit/geometry.h"
#include "braggwit/spin_state.h"

namespace braggwit {

/// S^{ab}(q) = sum_{i<j} e^{i q.(r_i - r_j)} <sigma_i^a sigma_j^b> for a, b in {x, y, z}.
struct StructureFactorMatrix {
    WaveVector q;
    double phase_per_site = 0;
    std::array<complex, 9> entries{};

    complex& at(PauliAxis a, PauliAxis b) { return entries[axis_index(a) * 3 + axis_index(b)]; }
    const complex& at(PauliAxis a, PauliAxis b) const { return entries[axis_index(a) * 3 + axis_index(b)]; }
};

/// Coefficients and wave vectors of W = 1 - sum_a c_a C^a(q^a).
class WitnessSpec {
   public:
    /// Throws DomainError unless |c_a| <= 1 for every axis.
    WitnessSpec(std::array<double, 3> coefficients, std::array<WaveVector, 3> wave_vectors);

    /// c = (1, 1, -1) with every q^a = 0: the Dicke witness.
    static WitnessSpec dicke();

    const std::array<double, 3>& coefficients() const { return coefficients_; }
    const std::array<WaveVector, 3>& wave_vectors() const { return wave_vectors_; }
    double coefficient(PauliAxis a) const { return coefficients_[axis_index(a)]; }
    const WaveVector& wave_vector(PauliAxis a) const { return wave_vectors_[axis_index(a)]; }
    bool is_trivial() const { return coefficients_ == std::array<double, 3>{0, 0, 0}; }

   private:
    std::array<double, 3> coefficients_;
    std::array<WaveVector, 3> wave_vectors_;
};

StructureFactorMatrix structure_factor(const CorrelationTable& table, const ChainGeometry& geometry,
                                       const WaveVector& q);
StructureFactorMatrix structure_factor(const SpinState& state, const ChainGeometry& geometry, const WaveVector& q);
StructureFactorMatrix structure_factor(const MixedState& state, const ChainGeometry& geometry, const WaveVector& q);

/// C^a(q) = (S^{aa}(q) + S^{aa}(-q)) / (N (N - 1)), a spatial axis.
double c_alpha(const CorrelationTable& table, const ChainGeometry& geometry, PauliAxis axis, const WaveVector& q);
double c_alpha(const SpinState& state, const ChainGeometry& geometry, PauliAxis axis, const WaveVector& q);
double c_alpha(const MixedState& state, const ChainGeometry& geometry, PauliAxis axis, const WaveVector& q);

/// <W_D> = 1 - 2/(N(N-1)) (S^{xx}(0) + S^{yy}(0) - S^{zz}(0)). Negative values certify entanglement.
double witness_dicke(const CorrelationTable& table, const ChainGeometry& geometry);
double witness_dicke(const SpinState& state, const ChainGeometry& geometry);
double witness_dicke(const MixedState& state, const ChainGeometry& geometry);

double witness_general(const CorrelationTable& table, const ChainGeometry& geometry, const WitnessSpec& spec);
double witness_general(const SpinState& state, const ChainGeometry& geometry, const WitnessSpec& spec);
double witness_general(const MixedState& state, const ChainGeometry& geometry, const WitnessSpec& spec);

/// Checks |Im z| < 1e-12 and returns Re z. Throws NumericalError otherwise.
double real_or_throw(complex z, const char* what, double tolerance = 1e-12);

std::string structure_factor_to_json(const StructureFactorMatrix& s, const std::string& state_hash);
StructureFactorMatrix structure_factor_from_json(const std::string& text);

}  // namespace braggwit
