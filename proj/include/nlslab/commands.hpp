#pragma once
#include <string>

#include "nlslab/config.hpp"
#include "nlslab/grid.hpp"

namespace nlslab {

struct CommandOptions {
    std::string config_path; // empty: built-in defaults
    std::string out_dir = "out";
    int threads = 0; // 0: hardware default
    bool quiet = false;
};

// Initial data described by the config: dressed solitary wave plus an optional
// localized perturbation in the co-moving frame.
ComplexField initial_data(const ExperimentConfig& cfg, const GridPtr& g);

// Subcommands. Return value is the process exit code contract:
//   0 pass, 1 check failure, 2 usage/config error, 3 numerical failure.
int cmd_simulate(const CommandOptions& opt);
int cmd_fit_modulation(const CommandOptions& opt);
int cmd_verify_identities(const CommandOptions& opt);
int cmd_verify_dft(const CommandOptions& opt);
int cmd_decay_report(const CommandOptions& opt);

// Dispatch by name with error-to-exit-code mapping.
int run_command(const std::string& name, const CommandOptions& opt);

} // namespace nlslab
