// Copyright 2026 The zakgkp Authors
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

#ifndef ZAKGKP_ERRORS_H
#define ZAKGKP_ERRORS_H

#include <stdexcept>
#include <string>

namespace zakgkp {

/// Comb sum truncated at M_max leaves more than the requested mass outside the window.
struct TruncationError : std::runtime_error {
    double tail_mass;
    TruncationError(const std::string &msg, double tail_mass) : std::runtime_error(msg), tail_mass(tail_mass) {
    }
};

/// Two states live on different grids, or a grid does not fit the requested layout.
struct GridMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A coordinate or shift that must hit a grid node does not.
struct OffGridError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NormalizationError : std::runtime_error {
    double norm;
    NormalizationError(const std::string &msg, double norm) : std::runtime_error(msg), norm(norm) {
    }
};

/// The state has no weight on the correctable-patch translates, so no logical qubit can be formed.
struct DegenerateLogicalError : std::runtime_error {
    double raw_trace;
    DegenerateLogicalError(const std::string &msg, double raw_trace)
        : std::runtime_error(msg), raw_trace(raw_trace) {
    }
};

}  // namespace zakgkp

#endif
