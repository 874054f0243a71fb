#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "artifacts.hpp"
#include "config.hpp"

namespace sawom::cli {

inline constexpr std::string_view kSubcommands[] = {"material", "layout",  "modemap", "phasemap", "selectivity",
                                                    "spectrum", "cavity", "budget",  "all"};

enum ExitCode : int { kOk = 0, kValidationFailure = 1, kComputationFailure = 2 };

struct DispatchOptions {
  std::filesystem::path out_dir;     // empty: config output directory
  std::vector<std::string> formats;  // empty: config output formats
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string config_bytes;          // hashed into the manifest
};

// Artifacts for one subcommand, filtered by format, not yet written.
std::vector<Artifact> run_subcommand(std::string_view subcommand, const RunConfig& config,
                                     const DispatchOptions& options);

std::string manifest_json(std::string_view subcommand, const DispatchOptions& options,
                          const std::vector<std::string>& formats, const std::vector<Artifact>& artifacts);

// Computes, writes artifacts plus manifest.json, and maps errors to exit codes.
int dispatch(std::string_view subcommand, const RunConfig& config, const DispatchOptions& options,
             std::ostream& err);

// Full command line handling; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace sawom::cli
