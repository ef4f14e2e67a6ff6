#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace patmine::cli {

enum ExitCode : int { kSuccess = 0, kUsage = 1, kDataError = 2, kInternalError = 3 };

struct RunConfig {
  std::string command;  // mine | match | compile | stats
  std::string data_path;
  std::optional<std::string> hierarchy_path;
  std::string pattern;
  std::optional<std::uint64_t> sigma;
  std::string algorithm = "dfs";
  bool partial = false;
  std::optional<std::string> output_path;
  std::optional<std::string> dot_path;  // compile only; "-" writes to `out`
};

/// Parses the command line and executes the selected command. Results go to
/// `out` (or the output file), diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Executes an already parsed configuration.
int execute(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace patmine::cli
