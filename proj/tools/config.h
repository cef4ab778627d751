// Copyright 2026 The gkpforge Authors
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

#ifndef GKPFORGE_TOOLS_CONFIG_H
#define GKPFORGE_TOOLS_CONFIG_H

#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "gkpforge/dispersive.h"
#include "gkpforge/ideal_protocol.h"
#include "gkpforge/oscillator.h"
#include "gkpforge/serialize.h"

namespace gkpforge::cli {

/// Artifacts a command may write; [output] formats selects a subset.
inline const std::set<std::string> &known_formats() {
    static const std::set<std::string> k = {"density", "wigner", "fit", "snapshots", "schedule", "metadata"};
    return k;
}

/// Parsed and validated configuration file. Every field is resolved (defaults
/// filled in) so the echo in output headers is complete.
struct RunConfig {
    // [protocol]
    int n_qubits = 3;
    double w = 3.2;
    std::optional<double> w_db;
    double peak_spacing = kDefaultPeakSpacing;
    VPrepParams vprep;

    // [grid]
    PositionGrid grid = PositionGrid::standard();

    // [dispersive]
    double chi = 1.0;
    double alpha0 = 30.0;
    int n_flips = 7;
    int fock_cutoff = 80;
    double dt = 0.0;
    NoiseRates noise;
    bool number_coupling = true;

    // [output]
    std::string directory = "gkpforge_out";
    std::set<std::string> formats = known_formats();
    WignerWindow wigner;

    ProtocolParams protocol() const;
    SimConfig sim() const;
    bool wants(const std::string &format) const { return formats.count(format) > 0; }

    /// Resolved settings as section.key=value, in file order; excludes the
    /// output directory so relocating a run does not change its hash.
    std::vector<std::pair<std::string, std::string>> echo() const;
};

/// Shortest decimal text that reads back to the same double.
std::string shortest(double x);

/// Throws ConfigError on syntax errors, unknown sections or keys, malformed
/// values, both or neither of W / W_db, and anything the library rejects.
RunConfig parse_config(std::istream &in, const std::string &origin);
RunConfig load_config(const std::string &path);

}  // namespace gkpforge::cli

#endif  // GKPFORGE_TOOLS_CONFIG_H
