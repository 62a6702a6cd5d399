#include <CLI11.hpp>

#include "bnfkit/cli/cli.hpp"

namespace bnfkit::cli {

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Birkhoff normal forms, genericity checks and stability experiments", "bnfkit"};
  app.set_version_flag("--version", version_string());
  std::string command, config;
  Overrides ov;
  std::uint64_t seed = 0;
  int jobs = 0;
  std::string out_dir = ".";
  app.add_option("command", command, "Command to run")->required()->check(CLI::IsMember(command_names()));
  app.add_option("--config", config, "TOML configuration file")->required()->check(CLI::ExistingFile);
  auto* seed_opt = app.add_option("--seed", seed, "Override the configuration seed");
  auto* out_opt = app.add_option("--out", out_dir, "Output directory");
  auto* jobs_opt = app.add_option("--jobs", jobs, "Worker threads")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kConfigError;
  }
  if (*seed_opt) ov.seed = seed;
  if (*jobs_opt) ov.jobs = jobs;
  if (*out_opt) ov.out_dir = out_dir;

  try {
    for (const auto& path : run(command, config, ov)) out << "wrote " << path.string() << '\n';
    return kSuccess;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const SmallDivisorError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const StepFailureError& e) {
    err << "numerical error: " << e.what() << " (t = " << e.time() << ")\n";
    return kNumericalError;
  } catch (const NotEllipticError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const DegeneracyError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalError;
  } catch (const Error& e) {
    // Domain, shape and precondition failures come from configured values.
    err << "invalid input: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace bnfkit::cli
