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

#include <string>

#include "braggwit/noise.h"
#include "braggwit/reconstruction.h"
#include "braggwit/scattering.h"
#include "cli/config.h"

namespace braggwit::cli {

/// Provenance lines shared by every table: "# key=value".
std::string table_preamble(const RunConfig& config);

std::string reconstruction_report_json(const ReconstructionReport& report, const RunConfig& config);
/// phase_per_site, then Re/Im of the nine T^{ab}, then the three singles.
std::string symmetrized_table(const ReconstructionReport& report, const RunConfig& config);
/// m, then the nine G^{ab}(m).
std::string separation_table(const ReconstructionReport& report, const RunConfig& config);

std::string noise_report_json(const NoiseReport& report, const RunConfig& config);
std::string regime_report_json(const RegimeReport& report, const RunConfig& config);

/// "-2.000000, entanglement detected" or "2.000000, not detected".
std::string verdict(double witness);

}  // namespace braggwit::cli
