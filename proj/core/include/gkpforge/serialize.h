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

#ifndef GKPFORGE_SERIALIZE_H
#define GKPFORGE_SERIALIZE_H

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "gkpforge/dispersive.h"
#include "gkpforge/gkp.h"
#include "gkpforge/oscillator.h"
#include "gkpforge/qudit.h"

namespace gkpforge {

/// Provenance written at the top of every output file.
struct FileMetadata {
    std::string command;
    /// Resolved configuration, in emission order.
    std::vector<std::pair<std::string, std::string>> config;

    /// 64-bit FNV-1a over the `key=value` lines, as 16 hex digits.
    std::string config_hash() const;
};

/// Round-trip scientific notation ("%.17e").
std::string format_number(double x);

void write_wigner_csv(const std::string &path, const WignerGrid &w, const FileMetadata &meta);
WignerGrid read_wigner_csv(const std::string &path);

void write_density_csv(const std::string &path, const GridDensityMatrix &rho, const FileMetadata &meta);
void write_density_csv(const std::string &path, const LowRankDensity &rho, const FileMetadata &meta);
std::variant<GridDensityMatrix, LowRankDensity> read_density_csv(const std::string &path);

struct FitReport {
    GkpParams params;
    double fidelity = 0.0;
    double delta_db = 0.0;
};

std::string fit_report_json(const FitResult &fit, const FileMetadata &meta);
FitReport parse_fit_report(const std::string &json_text);

void write_sweep_csv(const std::string &path, const SweepResult &sweep, const FileMetadata &meta);
std::vector<SweepRow> read_sweep_csv(const std::string &path);

/// Level amplitudes (level_index, k, re, im, abs) and `n_samples` points of
/// the interpolant over one period (y, re, im, abs).
void write_vstate_csv(const std::string &amplitudes_path, const std::string &samples_path, const QuditState &v,
                      const FileMetadata &meta, int n_samples = 512);

void write_schedule_csv(const std::string &path, const DriveSchedule &schedule, const FileMetadata &meta);

std::string dispersive_metadata_json(const SimConfig &config, const DispersiveResult &result,
                                     const FileMetadata &meta);

void write_text_file(const std::string &path, const std::string &text);
std::string read_text_file(const std::string &path);

}  // namespace gkpforge

#endif  // GKPFORGE_SERIALIZE_H
