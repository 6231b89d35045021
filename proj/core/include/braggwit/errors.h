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

#include <stdexcept>
#include <string>

namespace braggwit {

/// Invalid argument or state outside an operation's domain.
struct DomainError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A measurement design or record set that cannot determine the requested unknowns.
struct DesignError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical failure: non-converged quadrature, residuals above tolerance.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Laser/cavity parameters outside the adiabatic linear-response regime.
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed configuration or input file.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace braggwit
