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

#ifndef GKPFORGE_TOOLS_COMMANDS_H
#define GKPFORGE_TOOLS_COMMANDS_H

#include <iosfwd>
#include <string>
#include <vector>

#include "config.h"

namespace gkpforge::cli {

/// Each command writes its files under `out_dir` (created if missing) and a
/// short human-readable summary to `log`.
void cmd_run_ideal(const RunConfig &config, const std::string &out_dir, std::ostream &log);
void cmd_run_dispersive(const RunConfig &config, const std::string &out_dir, std::ostream &log);
/// `ratios` are rates in units of chi_max.
void cmd_sweep(const RunConfig &config, NoiseChannel channel, const std::vector<double> &ratios,
               const std::string &out_dir, std::ostream &log);
void cmd_fit(const std::string &density_path, const LogicalAmplitudes &amps, const std::string &out_dir,
             std::ostream &log);
void cmd_vstate(const RunConfig &config, const std::string &out_dir, std::ostream &log);

/// Parses "0,1e-4,1e-3".
std::vector<double> parse_rate_list(const std::string &text);

}  // namespace gkpforge::cli

#endif  // GKPFORGE_TOOLS_COMMANDS_H
