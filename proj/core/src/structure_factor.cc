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

#include "braggwit/structure_factor.h"

#include <cmath>
#include <string>

#include <json.hpp>

#include "braggwit/errors.h"
#include "braggwit/state_io.h"

namespace braggwit {

namespace {

void check_geometry(const CorrelationTable& table, const ChainGeometry& geometry) {
    if (table.n_sites() != geometry.n_sites()) {
        throw DomainError("state has " + std::to_string(table.n_sites()) + " sites but geometry has " +
                          std::to_string(geometry.n_sites()));
    }
}

// sum_{i<j} e^{i p (i - j)} <sigma_i^a sigma_j^b>
complex ordered_pair_sum(const CorrelationTable& table, PauliAxis a, PauliAxis b, double phase) {
    complex acc{0, 0};
    for (int i = 0; i < table.n_sites(); ++i) {
        for (int j = i + 1; j < table.n_sites(); ++j) {
            acc += std::polar(1.0, phase * (i - j)) * table.pair(i, a, j, b);
        }
    }
    return acc;
}

}  // namespace

double real_or_throw(complex z, const char* what, double tolerance) {
    if (!(std::abs(z.imag()) < tolerance)) {
        throw NumericalError(std::string(what) + ": imaginary residual " + format_double(z.imag()) +
                             " exceeds tolerance");
    }
    return z.real();
}

WitnessSpec::WitnessSpec(std::array<double, 3> coefficients, std::array<WaveVector, 3> wave_vectors)
    : coefficients_(coefficients), wave_vectors_(std::move(wave_vectors)) {
    for (double c : coefficients_) {
        if (!(std::abs(c) <= 1.0)) throw DomainError("witness coefficients must satisfy |c| <= 1");
    }
}

WitnessSpec WitnessSpec::dicke() { return WitnessSpec({1, 1, -1}, {}); }

StructureFactorMatrix structure_factor(const CorrelationTable& table, const ChainGeometry& geometry,
                                       const WaveVector& q) {
    check_geometry(table, geometry);
    StructureFactorMatrix s;
    s.q = q;
    s.phase_per_site = q.phase_per_site(geometry);
    for (PauliAxis a : kSpatialAxes) {
        for (PauliAxis b : kSpatialAxes) s.at(a, b) = ordered_pair_sum(table, a, b, s.phase_per_site);
    }
    return s;
}

StructureFactorMatrix structure_factor(const SpinState& state, const ChainGeometry& geometry, const WaveVector& q) {
    return structure_factor(CorrelationTable::from(state), geometry, q);
}

StructureFactorMatrix structure_factor(const MixedState& state, const ChainGeometry& geometry, const WaveVector& q) {
    return structure_factor(CorrelationTable::from(state), geometry, q);
}

double c_alpha(const CorrelationTable& table, const ChainGeometry& geometry, PauliAxis axis, const WaveVector& q) {
    check_geometry(table, geometry);
    if (axis == PauliAxis::I) throw DomainError("c_alpha needs a spatial axis");
    double phase = q.phase_per_site(geometry);
    complex sum = ordered_pair_sum(table, axis, axis, phase) + ordered_pair_sum(table, axis, axis, -phase);
    double n = table.n_sites();
    return real_or_throw(sum / (n * (n - 1)), "C^a(q)");
}

double c_alpha(const SpinState& state, const ChainGeometry& geometry, PauliAxis axis, const WaveVector& q) {
    return c_alpha(CorrelationTable::from(state), geometry, axis, q);
}

double c_alpha(const MixedState& state, const ChainGeometry& geometry, PauliAxis axis, const WaveVector& q) {
    return c_alpha(CorrelationTable::from(state), geometry, axis, q);
}

double witness_dicke(const CorrelationTable& table, const ChainGeometry& geometry) {
    check_geometry(table, geometry);
    complex s = ordered_pair_sum(table, PauliAxis::X, PauliAxis::X, 0) +
                ordered_pair_sum(table, PauliAxis::Y, PauliAxis::Y, 0) -
                ordered_pair_sum(table, PauliAxis::Z, PauliAxis::Z, 0);
    double n = table.n_sites();
    return 1.0 - real_or_throw(2.0 / (n * (n - 1)) * s, "W_D");
}

double witness_dicke(const SpinState& state, const ChainGeometry& geometry) {
    return witness_dicke(CorrelationTable::from(state), geometry);
}

double witness_dicke(const MixedState& state, const ChainGeometry& geometry) {
    return witness_dicke(CorrelationTable::from(state), geometry);
}

double witness_general(const CorrelationTable& table, const ChainGeometry& geometry, const WitnessSpec& spec) {
    double w = 1.0;
    for (PauliAxis a : kSpatialAxes) {
        double c = spec.coefficient(a);
        if (c != 0) w -= c * c_alpha(table, geometry, a, spec.wave_vector(a));
    }
    return w;
}

double witness_general(const SpinState& state, const ChainGeometry& geometry, const WitnessSpec& spec) {
    return witness_general(CorrelationTable::from(state), geometry, spec);
}

double witness_general(const MixedState& state, const ChainGeometry& geometry, const WitnessSpec& spec) {
    return witness_general(CorrelationTable::from(state), geometry, spec);
}

std::string structure_factor_to_json(const StructureFactorMatrix& s, const std::string& state_hash) {
    nlohmann::ordered_json j;
    j["format"] = "braggwit.structure_factor";
    j["format_version"] = kFormatVersion;
    j["state_hash"] = state_hash;
    const Vec3& q = s.q.components();
    j["q"] = {q.x(), q.y(), q.z()};
    j["phase_per_site"] = s.phase_per_site;
    auto& entries = j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : s.entries) entries.push_back({e.real(), e.imag()});
    return j.dump(1) + "\n";
}

StructureFactorMatrix structure_factor_from_json(const std::string& text) {
    try {
        auto j = nlohmann::json::parse(text);
        if (j.at("format_version").get<int>() != kFormatVersion) {
            throw SchemaError("structure factor: unsupported format_version");
        }
        StructureFactorMatrix s;
        const auto& q = j.at("q");
        s.q = WaveVector(Vec3(q.at(0).get<double>(), q.at(1).get<double>(), q.at(2).get<double>()));
        s.phase_per_site = j.at("phase_per_site").get<double>();
        const auto& entries = j.at("entries");
        if (entries.size() != 9) throw SchemaError("structure factor: expected 9 entries");
        for (std::size_t i = 0; i < 9; ++i) {
            s.entries[i] = {entries[i].at(0).get<double>(), entries[i].at(1).get<double>()};
        }
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw SchemaError(std::string("structure factor: ") + e.what());
    }
}

}  // namespace braggwit
