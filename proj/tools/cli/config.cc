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

#include "cli/config.h"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "braggwit/errors.h"
#include "braggwit/state_io.h"

namespace braggwit::cli {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw SchemaError("config: " + path + ": " + what);
}

std::string type_name(const Json& j) {
    if (j.is_number_integer()) return "integer";
    if (j.is_number()) return "number";
    return j.type_name();
}

void merge_into(Json& base, const Json& user, const std::string& prefix) {
    if (!user.is_object()) fail(prefix.empty() ? "<root>" : prefix, "expected an object");
    for (const auto& [key, value] : user.items()) {
        std::string path = prefix.empty() ? key : prefix + "." + key;
        if (!base.contains(key)) fail(path, "unknown key");
        Json& slot = base[key];
        if (slot.is_object()) {
            merge_into(slot, value, path);
            continue;
        }
        bool ok = false;
        if (slot.is_number_float()) {
            ok = value.is_number();
        } else if (slot.is_number_unsigned()) {
            ok = value.is_number_unsigned() || (value.is_number_integer() && value.get<std::int64_t>() >= 0);
        } else if (slot.is_number_integer()) {
            ok = value.is_number_integer();
        } else {
            ok = slot.type() == value.type();
        }
        if (!ok) fail(path, "expected " + type_name(slot) + ", got " + type_name(value));
        slot = value;
    }
}

const Json& at_path(const Json& j, const std::string& path) {
    const Json* cur = &j;
    std::stringstream ss(path);
    std::string part;
    while (std::getline(ss, part, '.')) cur = &cur->at(part);
    return *cur;
}

double number(const Json& config, const std::string& path) { return at_path(config, path).get<double>(); }

Vec3 vec3(const Json& config, const std::string& path) {
    const Json& v = at_path(config, path);
    if (v.size() != 3) fail(path, "expected 3 numbers");
    Vec3 out;
    for (int i = 0; i < 3; ++i) {
        if (!v[static_cast<std::size_t>(i)].is_number()) fail(path, "expected 3 numbers");
        out(i) = v[static_cast<std::size_t>(i)].get<double>();
    }
    return out;
}

std::vector<double> numbers(const Json& config, const std::string& path) {
    std::vector<double> out;
    for (const auto& v : at_path(config, path)) {
        if (!v.is_number()) fail(path, "expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

// Rewraps DomainError from module validation so the message names the block.
template <class F>
auto named(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
}

}  // namespace

Json default_config() {
    return Json::parse(R"({
  "format_version": 1,
  "seed": 0,
  "threads": 0,
  "output": {"dir": "braggwit_out"},
  "units": {"frequency": "kappa", "to_internal": 1.0},
  "state": {"family": "dicke", "n_sites": 4, "excitations": 2, "angles": [], "components": 4, "file": ""},
  "geometry": {"spacing": 1.0, "axis": [1.0, 0.0, 0.0]},
  "laser": {"rabi_0": 1.0, "rabi_1": 1.0, "phase": 0.0, "vacuum_rabi": 1.0, "detuning": 100.0,
            "cavity_detuning": 0.0, "cavity_linewidth": 1.0, "atomic_linewidth": 0.0},
  "pulse": {"shape": "square", "duration": 1.0, "time": 1.0, "samples": []},
  "regime": {"threshold": 10.0, "allow_violation": false},
  "witness": {"coefficients": [1.0, 1.0, -1.0], "phase_per_site": [0.0, 0.0, 0.0]},
  "scan": {"phases": [], "phase_min": 0.0, "phase_max": 3.141592653589793, "points": 8},
  "design": {"phases": [], "include_rotations": true, "condition_cap": 1000000.0},
  "noise": {"efficiency": 1.0, "window": 1.0, "shots": 1000, "mean_photons": 10.0,
            "overflow_guard": 1000000000.0, "bootstrap_resamples": 0}
})");
}

Json merge_config(const Json& user) {
    Json base = default_config();
    merge_into(base, user, "");
    if (base["format_version"].get<int>() != kFormatVersion) {
        fail("format_version", "unsupported version " + base["format_version"].dump());
    }
    return base;
}

void apply_override(Json& config, const std::string& assignment) {
    auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw SchemaError("override '" + assignment + "': expected KEY=VALUE");
    std::string key = assignment.substr(0, eq), text = assignment.substr(eq + 1);
    Json value = Json::parse(text, nullptr, false);
    if (value.is_discarded()) value = text;

    const Json defaults = default_config();
    const Json* schema = &defaults;
    Json* cur = &config;
    std::stringstream ss(key);
    std::string part, walked;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        walked += (walked.empty() ? "" : ".") + parts[i];
        if (!schema->is_object() || !schema->contains(parts[i])) fail(walked, "unknown key in override");
        schema = &(*schema)[parts[i]];
        if (i + 1 == parts.size()) {
            (*cur)[parts[i]] = value;
        } else {
            if (!cur->contains(parts[i])) (*cur)[parts[i]] = Json::object();
            cur = &(*cur)[parts[i]];
        }
    }
}

std::string config_hash(const Json& config) {
    Json copy = config;
    copy.erase("threads");
    copy.erase("output");
    return hex64(fnv1a64(copy.dump()));
}

RunConfig load_run_config(const std::optional<std::string>& path, const std::vector<std::string>& overrides,
                          const std::optional<std::uint64_t>& seed, const std::optional<int>& threads,
                          const std::optional<std::string>& out_dir) {
    Json user = Json::object();
    if (path) {
        std::ifstream in(*path, std::ios::binary);
        if (!in) throw std::runtime_error("cannot open config " + *path);
        std::stringstream buf;
        buf << in.rdbuf();
        try {
            user = Json::parse(buf.str());
        } catch (const Json::parse_error& e) {
            throw SchemaError("config " + *path + ": " + e.what());
        }
    }
    for (const auto& o : overrides) apply_override(user, o);
    if (seed) user["seed"] = *seed;
    if (threads) user["threads"] = *threads;
    if (out_dir) user["output"]["dir"] = *out_dir;

    RunConfig rc;
    rc.raw = merge_config(user);
    rc.hash = config_hash(rc.raw);
    rc.seed = rc.raw["seed"].get<std::uint64_t>();
    rc.threads = rc.raw["threads"].get<int>();
    if (rc.threads < 0) fail("threads", "must be >= 0");
    rc.out_dir = rc.raw["output"]["dir"].get<std::string>();
    if (!(number(rc.raw, "units.to_internal") > 0)) fail("units.to_internal", "must be > 0");
    return rc;
}

LaserCavitySettings RunConfig::laser() const {
    const double f = number(raw, "units.to_internal");
    LaserCavitySettings s;
    s.rabi_0 = f * number(raw, "laser.rabi_0");
    s.rabi_1 = f * number(raw, "laser.rabi_1");
    s.phase = number(raw, "laser.phase");
    s.vacuum_rabi = f * number(raw, "laser.vacuum_rabi");
    s.detuning = f * number(raw, "laser.detuning");
    s.cavity_detuning = f * number(raw, "laser.cavity_detuning");
    s.cavity_linewidth = f * number(raw, "laser.cavity_linewidth");
    s.atomic_linewidth = f * number(raw, "laser.atomic_linewidth");
    named("laser", [&] {
        s.validate();
        return 0;
    });
    return s;
}

PulseProfile RunConfig::pulse() const {
    const double f = number(raw, "units.to_internal");
    PulseShape shape = named("pulse.shape", [&] { return parse_pulse_shape(raw["pulse"]["shape"].get<std::string>()); });
    return named("pulse", [&] {
        switch (shape) {
            case PulseShape::square: return PulseProfile::square(number(raw, "pulse.duration") / f);
            case PulseShape::gaussian_truncated:
                return PulseProfile::gaussian_truncated(number(raw, "pulse.duration") / f);
            default: {
                std::vector<std::pair<double, double>> samples;
                for (const auto& s : raw["pulse"]["samples"]) {
                    if (!s.is_array() || s.size() != 2 || !s[0].is_number() || !s[1].is_number()) {
                        fail("pulse.samples", "expected [time, envelope] pairs");
                    }
                    samples.emplace_back(s[0].get<double>() / f, s[1].get<double>());
                }
                return PulseProfile::custom_sampled(std::move(samples));
            }
        }
    });
}

double RunConfig::pulse_time() const {
    double t = number(raw, "pulse.time") / number(raw, "units.to_internal");
    if (!(t >= 0)) fail("pulse.time", "must be >= 0");
    return t;
}

RegimeOptions RunConfig::regime() const {
    RegimeOptions o;
    o.ratio_threshold = number(raw, "regime.threshold");
    o.allow_violation = raw["regime"]["allow_violation"].get<bool>();
    if (!(o.ratio_threshold > 0)) fail("regime.threshold", "must be > 0");
    return o;
}

ChainGeometry RunConfig::geometry(int n_sites) const {
    return named("geometry", [&] { return ChainGeometry(n_sites, number(raw, "geometry.spacing"), vec3(raw, "geometry.axis")); });
}

WitnessSpec RunConfig::witness(const ChainGeometry& geometry) const {
    auto c = numbers(raw, "witness.coefficients");
    auto p = numbers(raw, "witness.phase_per_site");
    if (c.size() != 3) fail("witness.coefficients", "expected 3 numbers");
    if (p.size() != 3) fail("witness.phase_per_site", "expected 3 numbers");
    return named("witness", [&] {
        return WitnessSpec({c[0], c[1], c[2]}, {WaveVector::along_chain(geometry, p[0]),
                                                 WaveVector::along_chain(geometry, p[1]),
                                                 WaveVector::along_chain(geometry, p[2])});
    });
}

std::vector<double> RunConfig::scan_phases() const {
    auto explicit_phases = numbers(raw, "scan.phases");
    if (!explicit_phases.empty()) return explicit_phases;
    int points = raw["scan"]["points"].get<int>();
    if (points < 1) fail("scan.points", "must be >= 1");
    double lo = number(raw, "scan.phase_min"), hi = number(raw, "scan.phase_max");
    std::vector<double> out;
    for (int j = 0; j < points; ++j) out.push_back(points == 1 ? lo : lo + (hi - lo) * j / (points - 1));
    return out;
}

std::vector<double> RunConfig::design_phases() const {
    auto explicit_phases = numbers(raw, "design.phases");
    return explicit_phases.empty() ? scan_phases() : explicit_phases;
}

DesignOptions RunConfig::design() const {
    DesignOptions d;
    d.include_rotations = raw["design"]["include_rotations"].get<bool>();
    d.base = laser();
    d.condition_cap = number(raw, "design.condition_cap");
    return d;
}

DetectionModel RunConfig::detection() const {
    DetectionModel m;
    const Json& n = raw["noise"];
    m.efficiency = n["efficiency"].get<double>();
    m.window = n["window"].get<double>();
    m.shots = n["shots"].get<std::uint64_t>();
    m.mean_photons = n["mean_photons"].get<double>();
    m.overflow_guard = n["overflow_guard"].get<double>();
    m.bootstrap_resamples = n["bootstrap_resamples"].get<int>();
    m.seed = seed;
    named("noise", [&] {
        m.validate();
        return 0;
    });
    return m;
}

int RunConfig::n_sites() const {
    if (raw["state"]["family"].get<std::string>() == "file") return pure_state().n_sites();
    int n = raw["state"]["n_sites"].get<int>();
    if (n < 2 || n > kDefaultMaxSites) {
        fail("state.n_sites", "must be in [2, " + std::to_string(kDefaultMaxSites) + "]");
    }
    return n;
}

SpinState RunConfig::pure_state() const {
    const Json& s = raw["state"];
    const std::string family = s["family"].get<std::string>();
    if (family == "file") {
        std::string file = s["file"].get<std::string>();
        if (file.empty()) fail("state.file", "required for family 'file'");
        return load_state(file);
    }
    const int n = n_sites();
    if (family == "dicke") {
        int k = s["excitations"].get<int>();
        if (k < 0 || k > n) fail("state.excitations", "must be in [0, state.n_sites]");
        return build_dicke(n, k);
    }
    if (family == "ghz") return build_ghz(n);
    if (family == "w") return build_w(n);
    if (family == "random_pure") return build_random_pure(n, seed);
    if (family == "product") {
        std::vector<std::pair<double, double>> angles;
        for (const auto& a : s["angles"]) {
            if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number()) {
                fail("state.angles", "expected [theta, phi] pairs");
            }
            angles.emplace_back(a[0].get<double>(), a[1].get<double>());
        }
        if (angles.empty()) angles.assign(static_cast<std::size_t>(n), {0.0, 0.0});
        if (static_cast<int>(angles.size()) != n) fail("state.angles", "needs one pair per site");
        return build_product(angles);
    }
    if (family == "random_separable") fail("state.family", "random_separable is a mixed state; this command needs a pure state");
    fail("state.family", "unknown family '" + family + "'");
}

MixedState RunConfig::mixed_state() const {
    const Json& s = raw["state"];
    if (s["family"].get<std::string>() == "random_separable") {
        int components = s["components"].get<int>();
        if (components < 1) fail("state.components", "must be >= 1");
        return build_random_separable(n_sites(), components, seed);
    }
    return MixedState(pure_state());
}

}  // namespace braggwit::cli
