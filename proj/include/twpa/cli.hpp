#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "twpa/config.hpp"

namespace twpa {

enum ExitCode : int {
  exit_ok = 0,
  exit_failure = 1,
  exit_config = 2,
  exit_domain = 3,
  exit_divergence = 4,
};

inline constexpr std::array<std::string_view, 6> subcommands{"dispersion", "gain",    "cme",
                                                             "photon-stats", "compare", "validity"};

/// Runs one subcommand and writes its files below the output directory
/// (out_dir when given, else the configured one).  Errors are reported on
/// `log` and mapped to exit codes.
int run(const std::string& subcommand, const std::filesystem::path& config_path,
        const std::optional<std::filesystem::path>& out_dir, std::ostream& log);

/// Same with an already parsed configuration; exceptions propagate.
void run_subcommand(const std::string& subcommand, const RunConfig& config, const std::filesystem::path& out_dir,
                    std::ostream& log);

}  // namespace twpa
