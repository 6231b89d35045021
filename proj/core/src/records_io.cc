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

#include "braggwit/records_io.h"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "braggwit/errors.h"
#include "braggwit/state_io.h"

namespace braggwit {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
    throw SchemaError("records line " + std::to_string(line) + ": " + what);
}

double parse_number(const std::string& field, int line, const char* name) {
    double v = 0;
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(line, std::string("bad number for ") + name + ": '" + field + "'");
    return v;
}

std::uint64_t parse_unsigned(const std::string& field, int line, const char* name) {
    std::uint64_t v = 0;
    const char* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, v);
    if (ec != std::errc() || ptr != end) fail(line, std::string("bad integer for ") + name + ": '" + field + "'");
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

void write_records(const RecordSet& records, std::ostream& out) {
    out << "# format_version=" << kFormatVersion << "\n";
    out << "# n_sites=" << records.n_sites << "\n";
    out << "# vacuum_rabi=" << format_double(records.vacuum_rabi) << "\n";
    out << "# detuning=" << format_double(records.detuning) << "\n";
    out << "# seed=" << records.seed << "\n";
    out << "# config_hash=" << records.config_hash << "\n";
    out << kRecordHeader << "\n";
    for (const auto& r : records.records) {
        const auto& s = r.setting;
        out << to_string(s.channel) << ',' << format_double(s.rabi_0) << ',' << format_double(s.rabi_1) << ','
            << format_double(s.phase) << ',' << to_string(s.rotation) << ',' << format_double(s.phase_per_site) << ','
            << format_double(r.intensity) << ',' << format_double(r.output_intensity) << ','
            << format_double(r.time) << ',' << format_double(r.variance) << "\n";
    }
}

RecordSet read_records(std::istream& in) {
    RecordSet rs;
    std::map<std::string, std::string> meta;
    std::string line;
    int lineno = 0;
    bool header_seen = false;
    LaserCavitySettings base;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            if (header_seen) fail(lineno, "metadata after the header line");
            auto body = line.substr(1);
            body.erase(0, body.find_first_not_of(' '));
            auto eq = body.find('=');
            if (eq == std::string::npos) fail(lineno, "metadata line without '='");
            meta[body.substr(0, eq)] = body.substr(eq + 1);
            continue;
        }
        if (!header_seen) {
            if (line != kRecordHeader) fail(lineno, "expected header '" + std::string(kRecordHeader) + "'");
            header_seen = true;
            for (const char* key : {"format_version", "n_sites", "vacuum_rabi", "detuning"}) {
                if (!meta.count(key)) fail(lineno, std::string("missing metadata '") + key + "'");
            }
            if (parse_unsigned(meta["format_version"], lineno, "format_version") !=
                static_cast<std::uint64_t>(kFormatVersion)) {
                fail(lineno, "unsupported format_version " + meta["format_version"]);
            }
            rs.n_sites = static_cast<int>(parse_unsigned(meta["n_sites"], lineno, "n_sites"));
            if (rs.n_sites < 2) fail(lineno, "n_sites must be >= 2");
            rs.vacuum_rabi = parse_number(meta["vacuum_rabi"], lineno, "vacuum_rabi");
            rs.detuning = parse_number(meta["detuning"], lineno, "detuning");
            if (meta.count("seed")) rs.seed = parse_unsigned(meta["seed"], lineno, "seed");
            if (meta.count("config_hash")) rs.config_hash = meta["config_hash"];
            base.vacuum_rabi = rs.vacuum_rabi;
            base.detuning = rs.detuning;
            try {
                base.validate();
            } catch (const std::exception& e) {
                fail(lineno, e.what());
            }
            continue;
        }
        auto f = split(line, ',');
        if (f.size() != 10) fail(lineno, "expected 10 fields, got " + std::to_string(f.size()));
        MeasurementRecord r;
        try {
            ScatteringChannel channel = parse_channel(f[0]);
            RotationTag rotation = parse_rotation(f[4]);
            double rabi_0 = parse_number(f[1], lineno, "rabi_0");
            double rabi_1 = parse_number(f[2], lineno, "rabi_1");
            double phase = parse_number(f[3], lineno, "phase");
            double p = parse_number(f[5], lineno, "phase_per_site");
            r.setting = make_setting(base, rabi_0, rabi_1, phase, rotation, channel, p);
        } catch (const SchemaError&) {
            throw;
        } catch (const std::exception& e) {
            fail(lineno, e.what());
        }
        r.intensity = parse_number(f[6], lineno, "intensity");
        r.output_intensity = parse_number(f[7], lineno, "output_intensity");
        r.time = parse_number(f[8], lineno, "time");
        r.variance = parse_number(f[9], lineno, "variance");
        if (r.variance < 0) fail(lineno, "variance must be >= 0");
        rs.records.push_back(r);
    }
    if (!header_seen) throw SchemaError("records: header line not found");
    return rs;
}

void save_records(const RecordSet& records, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    write_records(records, out);
    if (!out) throw std::runtime_error("failed writing " + path);
}

RecordSet load_records(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_records(in);
}

}  // namespace braggwit
