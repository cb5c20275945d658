// Copyright 2026 The usf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace usf {

struct DimensionMismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidDimension : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotHermitian : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NonFinite : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidState : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct InvalidPovm : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct EmptyOtherSet : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Requested Fock truncation cannot reach the configured norm bound.
struct TruncationTooSmall : std::runtime_error {
    TruncationTooSmall(const std::string& what, double deficit, double bound)
        : std::runtime_error(what), deficit(deficit), bound(bound) {}
    double deficit;
    double bound;
};

/// Probe power is below the threshold at which the acceptance probability
/// is reachable even at full loss. Carries that threshold.
struct InsufficientPower : std::runtime_error {
    InsufficientPower(const std::string& what, double n_min)
        : std::runtime_error(what), n_min(n_min) {}
    double n_min;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ToleranceExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace usf
