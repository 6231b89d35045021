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

#include <complex>
#include <cstdint>
#include <string_view>

#include <Eigen/Core>

namespace braggwit {

using complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

/// Single-site operator label. X, Y, Z are the Pauli matrices (eigenvalues +-1);
/// spin operators in this library are never rescaled by 1/2.
enum class PauliAxis : std::uint8_t { X = 0, Y = 1, Z = 2, I = 3 };

inline constexpr PauliAxis kSpatialAxes[3] = {PauliAxis::X, PauliAxis::Y, PauliAxis::Z};

constexpr int axis_index(PauliAxis a) { return static_cast<int>(a); }

constexpr char axis_name(PauliAxis a) {
    switch (a) {
        case PauliAxis::X: return 'x';
        case PauliAxis::Y: return 'y';
        case PauliAxis::Z: return 'z';
        default: return 'i';
    }
}

PauliAxis parse_axis(std::string_view name);

Mat2 pauli_matrix(PauliAxis a);

}  // namespace braggwit
