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

#include <iostream>

#include "CLI11.hpp"
#include "commands.h"

using namespace gkpforge;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitTolerance = 3;

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"gkpforge: GKP state preparation from a qubit register"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string channel = "loss";
    std::string rates = "0,1e-4,1e-3";
    std::string density_path;
    double phi_v = 0.0;
    double omega_v = 0.0;

    auto add_common = [&](CLI::App *sub) {
        sub->add_option("--config", config_path, "INI configuration file")->required();
        sub->add_option("--out", out_dir, "output directory (overrides [output] directory)");
    };
    CLI::App *ideal = app.add_subcommand("run-ideal", "ideal unitary protocol, fit and Wigner output");
    add_common(ideal);
    CLI::App *disp = app.add_subcommand("run-dispersive", "dispersive Lindblad simulation");
    add_common(disp);
    CLI::App *sweep = app.add_subcommand("sweep", "fidelity against one noise rate");
    add_common(sweep);
    sweep->add_option("--channel", channel, "noise channel")
        ->check(CLI::IsMember({"loss", "osc-dephase", "qubit-decay", "qubit-dephase"}));
    sweep->add_option("--rates", rates, "comma-separated rates in units of chi_max");
    CLI::App *fit = app.add_subcommand("fit-gkp", "fit an approximate GKP state to a density file");
    fit->add_option("--in", density_path, "density.csv written by run-ideal or run-dispersive")->required();
    fit->add_option("--out", out_dir, "output directory")->required();
    fit->add_option("--phi-v", phi_v, "logical amplitude angle of the target");
    fit->add_option("--omega-v", omega_v, "logical phase of the target");
    CLI::App *vstate = app.add_subcommand("v-state", "qudit state amplitudes and interpolation samples");
    add_common(vstate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (fit->parsed()) {
            cli::cmd_fit(density_path, {phi_v, omega_v}, out_dir, std::cout);
            return 0;
        }
        const cli::RunConfig config = cli::load_config(config_path);
        const std::string dir = out_dir.empty() ? config.directory : out_dir;
        if (ideal->parsed()) {
            cli::cmd_run_ideal(config, dir, std::cout);
        } else if (disp->parsed()) {
            cli::cmd_run_dispersive(config, dir, std::cout);
        } else if (sweep->parsed()) {
            cli::cmd_sweep(config, parse_channel(channel), cli::parse_rate_list(rates), dir, std::cout);
        } else if (vstate->parsed()) {
            cli::cmd_vstate(config, dir, std::cout);
        }
    } catch (const ConfigError &e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const ToleranceError &e) {
        std::cerr << "tolerance error: " << e.what() << "\n";
        return kExitTolerance;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
