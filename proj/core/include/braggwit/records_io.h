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

#include <iosfwd>
#include <string>

#include "braggwit/reconstruction.h"

namespace braggwit {

/// Header line of the record table. Preamble lines start with '#' and carry
/// key=value metadata (format_version, n_sites, vacuum_rabi, detuning, seed,
/// config_hash). Columns are comma separated, one shot setting per line.
inline constexpr const char* kRecordHeader =
    "channel,rabi_0,rabi_1,phase,rotation,phase_per_site,intensity,output_intensity,time,variance";

void write_records(const RecordSet& records, std::ostream& out);
/// Coupling coefficients are recomputed from rabi_0, rabi_1, phase, vacuum_rabi
/// and detuning. Throws SchemaError with the offending line number.
RecordSet read_records(std::istream& in);

void save_records(const RecordSet& records, const std::string& path);
RecordSet load_records(const std::string& path);

}  // namespace braggwit
