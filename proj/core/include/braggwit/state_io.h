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
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "braggwit/spin_state.h"

namespace braggwit {

inline constexpr int kFormatVersion = 1;
inline constexpr const char* kBasisOrderingTag = "site0_lsb";

/// Shortest decimal that round-trips to the same double; locale independent.
std::string format_double(double value);
/// Fixed notation with the given number of decimals; locale independent.
std::string format_fixed(double value, int decimals);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t value);

/// State file: JSON object with format_version, basis_ordering, n_sites and
/// "amplitudes" as [re, im] pairs. Doubles are written with round-trip precision,
/// so save -> load -> save is byte-identical.
struct Provenance {
    std::string config_hash;
    std::uint64_t seed = 0;
};

std::string state_to_text(const SpinState& state, const std::optional<Provenance>& provenance = std::nullopt);
SpinState state_from_text(const std::string& text, int max_sites = kDefaultMaxSites);

void save_state(const SpinState& state, const std::string& path,
                const std::optional<Provenance>& provenance = std::nullopt);
SpinState load_state(const std::string& path, int max_sites = kDefaultMaxSites);

/// Hash of the serialized state, used to tie derived artifacts to their input.
std::string state_hash(const SpinState& state);

}  // namespace braggwit
