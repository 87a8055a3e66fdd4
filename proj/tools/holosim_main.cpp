#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "holosim/cli.hpp"
#include "holosim/errors.hpp"

namespace {

struct CommonFlags {
  std::string config_file;
  std::string output_dir;
  int steps = 0;
  std::string format;
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--config", flags->config_file, "JSON run configuration");
  cmd->add_option("--output", flags->output_dir, "output directory override");
  cmd->add_option("--steps", flags->steps,
                  "steps per segment override (>= 16)");
  cmd->add_option("--format", flags->format, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

holosim::cli::RunConfig resolve_config(const CommonFlags& flags) {
  holosim::cli::RunConfig config;
  if (!flags.config_file.empty()) {
    config = holosim::cli::load_config(flags.config_file);
  }
  if (!flags.output_dir.empty()) config.output.directory = flags.output_dir;
  if (flags.steps > 0) config.propagator.steps_per_segment = flags.steps;
  if (!flags.format.empty()) config.output.format = flags.format;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "holosim: holonomic-gate pulse construction and Schrodinger-equation "
      "simulation for closed parameter-sphere paths"};
  app.require_subcommand(1);

  CommonFlags flags;
  int samples = 501;
  int grid = 201;

  CLI::App* gate = app.add_subcommand(
      "gate", "propagate one gate and write gate_report.json");
  CLI::App* robustness = app.add_subcommand(
      "robustness", "systematic-error sweep of the Hadamard benchmark");
  CLI::App* pulse_area = app.add_subcommand(
      "pulse-area", "pulse-area comparison of the two drive families");
  CLI::App* population = app.add_subcommand(
      "population", "desired-output population along the Hadamard run");
  population->add_option("--samples", samples, "trajectory sample count");
  CLI::App* two_qubit = app.add_subcommand(
      "two-qubit", "five-level two-qubit gate demonstration");
  CLI::App* verify = app.add_subcommand(
      "verify", "run the invariant suite and write verify_report.json");
  CLI::App* export_pulse = app.add_subcommand(
      "export-pulse", "sample the drive parameters to CSV");
  export_pulse->add_option("--grid", grid, "pulse schedule grid size");

  for (CLI::App* cmd :
       {gate, robustness, pulse_area, population, two_qubit, verify,
        export_pulse}) {
    add_common_flags(cmd, &flags);
  }

  CLI11_PARSE(app, argc, argv);

  holosim::cli::RunConfig config;
  try {
    config = resolve_config(flags);
  } catch (const holosim::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return holosim::cli::kExitValidation;
  }

  if (gate->parsed()) return holosim::cli::cmd_gate(config, std::cout);
  if (robustness->parsed()) return holosim::cli::cmd_robustness(config, std::cout);
  if (pulse_area->parsed()) return holosim::cli::cmd_pulse_area(config, std::cout);
  if (population->parsed()) {
    return holosim::cli::cmd_population(config, samples, std::cout);
  }
  if (two_qubit->parsed()) return holosim::cli::cmd_two_qubit(config, std::cout);
  if (verify->parsed()) return holosim::cli::cmd_verify(config, std::cout);
  if (export_pulse->parsed()) {
    return holosim::cli::cmd_export_pulse(config, grid, std::cout);
  }
  return holosim::cli::kExitValidation;
}
