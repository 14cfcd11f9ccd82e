#pragma once

// The nilgrowth command line.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace nilgrowth::cli {

enum ExitCode { kOk = 0, kInternal = 1, kUsage = 2, kDomain = 3, kResource = 4 };

struct Config {
  std::optional<std::filesystem::path> cache_dir;
  unsigned default_threads = 1;
  std::size_t memory_budget = 50'000'000;
};

/// Reads a key=value file (keys cache_dir, default_threads, memory_budget;
/// '#' starts a comment). Throws InvalidParams or Io.
Config load_config(const std::filesystem::path& path);
Config parse_config(const std::string& text);

/// Runs one command line; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nilgrowth::cli
