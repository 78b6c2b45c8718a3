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

#ifndef ZAKGKP_TOOLS_CLI_H
#define ZAKGKP_TOOLS_CLI_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include "zakgkp/gkp.h"

namespace zakgkp::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitNumericalError = 3,
};

struct RunConfig {
    double alpha;
    size_t nu = 256;
    size_t nv = 256;
    bool grid_given = false;
    int mmax = 16;
    double delta = 0.3;
    std::string state = "vacuum";
    std::string out;
    std::string format = "csv";
    std::string method = "trace";
    uint64_t seed = 0;
    std::vector<double> deltas{0.5, 0.4, 0.3, 0.2, 0.1};
    int j_max = 3;
    int k_max = 3;
    std::optional<double> dx;
    std::optional<double> dy;

    RunConfig();

    GKPCode code() const;
    ZakGrid grid() const;
    /// key=value lines, loadable again with --config.
    std::string manifest(const std::string &command) const;
};

/// A state named on the command line: a position wavefunction to be Zak transformed, or an ideal state.
using StateSpec = std::variant<PositionStateDescriptor, IdealZakState>;

/// vacuum | gkp0 | gkp1 | gkp-approx[:delta[:l]] | tabulated:path. Throws std::invalid_argument.
StateSpec parse_state(const std::string &spec, const RunConfig &config);

/// Parses "NuxNv".
std::pair<size_t, size_t> parse_grid(const std::string &text);

/// The modular wavefunction for a position-state spec at the configured resolution.
ModularWavefunction prepare_grid_state(const PositionStateDescriptor &state, const RunConfig &config);

std::string logical_report_header();
std::string logical_report_row(const LogicalQubit &q);

/// Computes the logical qubit of `state` with method trace, ec-trace or overlap.
LogicalQubit logical_for(const StateSpec &state, const RunConfig &config);

int cmd_zakplot(const RunConfig &config, std::ostream &out);
int cmd_shift_array(const RunConfig &config, std::ostream &out);
int cmd_logical(const RunConfig &config, std::ostream &out);
int cmd_sweep(const RunConfig &config, std::ostream &out);

/// Parses arguments, dispatches, and maps failures to exit codes.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

}  // namespace zakgkp::cli

#endif
