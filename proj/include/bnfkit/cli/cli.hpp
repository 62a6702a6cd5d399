#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bnfkit/errors.hpp"

namespace bnfkit::cli {

/// Exit status of the command-line tool.
enum ExitCode : int { kSuccess = 0, kFailure = 1, kConfigError = 2, kNumericalError = 3 };

/// Invalid command line or configuration; message carries the field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::filesystem::path out_dir = ".";
};

std::vector<std::string> command_names();
std::string version_string();

/// Runs one command; returns the paths written. Throws ConfigError or the
/// library's errors.
std::vector<std::filesystem::path> run(const std::string& command, const std::filesystem::path& config,
                                       const Overrides& overrides);

/// Full front-end: parses argv, runs, reports errors on `err`, returns an ExitCode.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bnfkit::cli
