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

#include "braggwit/state_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "braggwit/errors.h"

namespace braggwit {

std::string format_double(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw NumericalError("cannot format double");
    return std::string(buf, end);
}

std::string format_fixed(double value, int decimals) {
    char buf[512];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, decimals);
    if (ec != std::errc()) throw NumericalError("cannot format double");
    std::string s(buf, end);
    if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
    return s;
}

std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hex64(std::uint64_t value) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    for (int i = 15; i >= 0; --i, value >>= 4) s[static_cast<std::size_t>(i)] = digits[value & 0xF];
    return s;
}

std::string state_to_text(const SpinState& state, const std::optional<Provenance>& provenance) {
    nlohmann::ordered_json j;
    j["format"] = "braggwit.state";
    j["format_version"] = kFormatVersion;
    if (provenance) {
        j["config_hash"] = provenance->config_hash;
        j["seed"] = provenance->seed;
    }
    j["basis_ordering"] = kBasisOrderingTag;
    j["n_sites"] = state.n_sites();
    auto& amps = j["amplitudes"] = nlohmann::ordered_json::array();
    for (const auto& a : state.amplitudes()) amps.push_back({a.real(), a.imag()});
    return j.dump(1) + "\n";
}

SpinState state_from_text(const std::string& text, int max_sites) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SchemaError(std::string("state file: ") + e.what());
    }
    try {
        if (j.value("format_version", -1) != kFormatVersion) {
            throw SchemaError("state file: unsupported format_version");
        }
        if (j.value("basis_ordering", std::string()) != kBasisOrderingTag) {
            throw SchemaError(std::string("state file: basis_ordering must be ") + kBasisOrderingTag);
        }
        int n = j.at("n_sites").get<int>();
        std::vector<complex> amps;
        for (const auto& pair : j.at("amplitudes")) {
            if (!pair.is_array() || pair.size() != 2) throw SchemaError("state file: amplitude must be [re, im]");
            amps.emplace_back(pair[0].get<double>(), pair[1].get<double>());
        }
        return SpinState(n, std::move(amps), max_sites);
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("state file: ") + e.what());
    }
}

void save_state(const SpinState& state, const std::string& path, const std::optional<Provenance>& provenance) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << state_to_text(state, provenance);
}

SpinState load_state(const std::string& path, int max_sites) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return state_from_text(ss.str(), max_sites);
}

std::string state_hash(const SpinState& state) { return hex64(fnv1a64(state_to_text(state))); }

}  // namespace braggwit
