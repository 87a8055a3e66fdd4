#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "holosim/frame.hpp"
#include "holosim/hamiltonian.hpp"
#include "holosim/path.hpp"
#include "holosim/propagator.hpp"

namespace holosim::cli {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;  // malformed config or input
inline constexpr int kExitNumerics = 3;    // numerical-contract violation

struct RunConfig {
  struct Gate {
    double theta = 0.78539816339744831;  // pi/4
    double phi = 0.0;
    std::optional<double> phi_tau;  // derived from the path when absent
  } gate;

  struct Path {
    std::string kind = "hadamard";  // fig1 | hadamard | custom
    double alpha0 = 1.5707963267948966;  // pi/2
    double tau1 = 0.25;
    double tau2 = 0.75;
    double tau = 1.0;
    std::string csv_source;
  } path;

  struct Model {
    std::string family = "k22_zero";  // k22_zero | k22_negbeta
  } model;

  struct Error {
    std::vector<double> epsilon_list = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30};
  } error;

  struct Propagator {
    int steps_per_segment = 4000;
  } propagator;

  struct Output {
    std::string directory = ".";
    std::string format = "csv";  // csv | json
  } output;
};

// Parses and validates; unknown keys are rejected with the offending path.
RunConfig config_from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& filename);

PathSpec build_path(const RunConfig& config, bool validate = true);
LambdaModel build_model(const RunConfig& config, const PathSpec& path);
GateSpec resolve_gate(const RunConfig& config, const PathSpec& path);
PropagatorConfig propagator_config(const RunConfig& config);

// Each command writes its outputs under config.output.directory and returns
// an exit code; diagnostics go to `log`.
int cmd_gate(const RunConfig& config, std::ostream& log);
int cmd_robustness(const RunConfig& config, std::ostream& log);
int cmd_pulse_area(const RunConfig& config, std::ostream& log);
int cmd_population(const RunConfig& config, int sample_count,
                   std::ostream& log);
int cmd_two_qubit(const RunConfig& config, std::ostream& log);
int cmd_verify(const RunConfig& config, std::ostream& log);
int cmd_export_pulse(const RunConfig& config, int grid_size,
                     std::ostream& log);

}  // namespace holosim::cli
