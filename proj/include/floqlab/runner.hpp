#pragma once

#include <filesystem>

#include "floqlab/config.hpp"
#include "floqlab/manifest.hpp"

namespace floqlab {

// Executes a subcommand: writes the data files, the plot script where the
// command reproduces a figure pipeline, and manifest.json. Throws the error
// taxonomy from error.hpp; the CLI maps it onto exit codes.
RunManifest run_command(const RunConfig& config);

// Exit-code mapping used by the CLI: 0 ok, 2 config, 3 numerical, 4 capability.
int run_command_exit_code(const RunConfig& config, bool print_errors = true);

}  // namespace floqlab
