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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "braggwit/geometry.h"
#include "braggwit/noise.h"
#include "braggwit/scattering.h"
#include "braggwit/spin_state.h"
#include "braggwit/structure_factor.h"

namespace braggwit::cli {

using Json = nlohmann::ordered_json;

/// Every accepted key with its default value. User files may only contain
/// keys present here, with matching JSON types.
Json default_config();

/// Merges `user` into the defaults, rejecting unknown keys and type
/// mismatches with SchemaError naming the dotted path.
Json merge_config(const Json& user);

/// Parses KEY=VALUE; VALUE is read as JSON when it parses, else as a string.
void apply_override(Json& config, const std::string& assignment);

/// FNV-1a over the canonical dump, ignoring keys that do not affect results
/// (threads, output).
std::string config_hash(const Json& config);

struct RunConfig {
    Json raw;
    std::string hash;
    std::uint64_t seed = 0;
    int threads = 0;
    std::string out_dir;

    LaserCavitySettings laser() const;
    PulseProfile pulse() const;
    double pulse_time() const;
    RegimeOptions regime() const;
    BeamGeometry beams() const;
    ChainGeometry geometry(int n_sites) const;
    WitnessSpec witness(const ChainGeometry& geometry) const;
    std::vector<double> scan_phases() const;
    std::vector<double> design_phases() const;
    DesignOptions design() const;
    DetectionModel detection() const;
    /// Pure state from state.family; random families draw from the run seed.
    SpinState pure_state() const;
    /// Mixed families (random_separable) or the pure state as a one-member ensemble.
    MixedState mixed_state() const;
    int n_sites() const;
};

RunConfig load_run_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides,
                          const std::optional<std::uint64_t>& seed, const std::optional<int>& threads,
                          const std::optional<std::string>& out_dir);

}  // namespace braggwit::cli
