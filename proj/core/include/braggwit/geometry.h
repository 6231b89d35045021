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

#include <Eigen/Core>

namespace braggwit {

using Vec3 = Eigen::Vector3d;

/// Uniform one-dimensional array: site j sits at j * spacing * axis.
class ChainGeometry {
   public:
    explicit ChainGeometry(int n_sites, double spacing = 1.0, const Vec3& axis = Vec3::UnitX());

    int n_sites() const { return n_sites_; }
    double spacing() const { return spacing_; }
    const Vec3& axis() const { return axis_; }
    Vec3 site_position(int j) const { return static_cast<double>(j) * spacing_ * axis_; }

   private:
    int n_sites_;
    double spacing_;
    Vec3 axis_;
};

/// Transferred wave vector (units of 1/length). Only its projection on the
/// chain axis enters interference phases.
class WaveVector {
   public:
    WaveVector() : components_(Vec3::Zero()) {}
    explicit WaveVector(const Vec3& components);

    /// Wave vector along the chain with the given dimensionless phase q.(d axis).
    static WaveVector along_chain(const ChainGeometry& geometry, double phase_per_site);

    const Vec3& components() const { return components_; }
    double phase_per_site(const ChainGeometry& geometry) const;
    WaveVector operator-() const { return WaveVector(-components_); }

   private:
    Vec3 components_;
};

}  // namespace braggwit
