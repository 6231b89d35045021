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

#include "braggwit/geometry.h"

#include <cmath>

#include "braggwit/errors.h"

namespace braggwit {

ChainGeometry::ChainGeometry(int n_sites, double spacing, const Vec3& axis)
    : n_sites_(n_sites), spacing_(spacing), axis_(axis) {
    if (n_sites < 2) throw DomainError("chain needs at least two sites");
    if (!(spacing > 0) || !std::isfinite(spacing)) throw DomainError("lattice spacing must be positive");
    if (!axis.allFinite() || std::abs(axis.norm() - 1.0) > 1e-12) {
        throw DomainError("chain axis must be a unit vector");
    }
}

WaveVector::WaveVector(const Vec3& components) : components_(components) {
    if (!components.allFinite()) throw DomainError("wave vector components must be finite");
}

WaveVector WaveVector::along_chain(const ChainGeometry& geometry, double phase_per_site) {
    return WaveVector(geometry.axis() * (phase_per_site / geometry.spacing()));
}

double WaveVector::phase_per_site(const ChainGeometry& geometry) const {
    return components_.dot(geometry.axis()) * geometry.spacing();
}

}  // namespace braggwit
