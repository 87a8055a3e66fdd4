#include "holosim/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <ostream>
#include <set>

#include "holosim/errors.hpp"
#include "holosim/experiments.hpp"
#include "holosim/holonomy.hpp"
#include "holosim/report_io.hpp"

namespace holosim::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// The -beta_dot family needs the polar angle bounded away from the pole
// wherever the azimuth moves; below this the detunings grow past what the
// default stepping resolves.
constexpr double kNegBetaAlphaFloor = 1e-3;

void reject_unknown_keys(const nlohmann::json& j, const std::string& where,
                         const std::set<std::string>& known) {
  if (!j.is_object()) {
    throw ValidationError("config: `" + where + "` must be an object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!known.count(key)) {
      throw ValidationError("config: unknown key `" + where + "." + key + "`");
    }
  }
}

double require_number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) {
    throw ValidationError("config: `" + where + "` must be a number");
  }
  return j.get<double>();
}

std::string require_string(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) {
    throw ValidationError("config: `" + where + "` must be a string");
  }
  return j.get<std::string>();
}

std::filesystem::path output_path(const RunConfig& config,
                                  const std::string& name) {
  return std::filesystem::path(config.output.directory) / name;
}

int run_guarded(std::ostream& log, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const ValidationError& e) {
    log << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NumericsError& e) {
    log << "error: " << e.what() << "\n";
    return kExitNumerics;
  }
}

nlohmann::json rows_to_json(const std::vector<RobustnessRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    arr.push_back({{"epsilon", row.epsilon}, {"fidelity", row.fidelity}});
  }
  return arr;
}

nlohmann::json rows_to_json(const std::vector<AreaRow>& rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& row : rows) {
    nlohmann::json item{{"alpha", row.alpha0},
                        {"area_k22zero", row.area_k22_zero},
                        {"phi_tau", row.phi_tau}};
    if (row.negbeta_singular) {
      item["area_k22negbeta"] = nullptr;
    } else {
      item["area_k22negbeta"] = row.area_k22_negbeta;
    }
    arr.push_back(item);
  }
  return arr;
}

struct Check {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

Check make_check(const std::string& name, double value, double threshold) {
  return {name, value, threshold, std::abs(value) <= threshold};
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  reject_unknown_keys(
      j, "", {"gate", "path", "model", "error", "propagator", "output"});
  RunConfig config;

  if (j.contains("gate")) {
    const auto& g = j.at("gate");
    reject_unknown_keys(g, "gate", {"theta", "phi", "phi_tau"});
    if (g.contains("theta")) config.gate.theta = require_number(g["theta"], "gate.theta");
    if (g.contains("phi")) config.gate.phi = require_number(g["phi"], "gate.phi");
    if (g.contains("phi_tau")) {
      config.gate.phi_tau = require_number(g["phi_tau"], "gate.phi_tau");
    }
  }
  if (j.contains("path")) {
    const auto& p = j.at("path");
    reject_unknown_keys(
        p, "path", {"kind", "alpha0", "tau1", "tau2", "tau", "csv_source"});
    if (p.contains("kind")) config.path.kind = require_string(p["kind"], "path.kind");
    if (p.contains("alpha0")) config.path.alpha0 = require_number(p["alpha0"], "path.alpha0");
    if (p.contains("tau1")) config.path.tau1 = require_number(p["tau1"], "path.tau1");
    if (p.contains("tau2")) config.path.tau2 = require_number(p["tau2"], "path.tau2");
    if (p.contains("tau")) config.path.tau = require_number(p["tau"], "path.tau");
    if (p.contains("csv_source")) {
      config.path.csv_source = require_string(p["csv_source"], "path.csv_source");
    }
  }
  if (j.contains("model")) {
    const auto& m = j.at("model");
    reject_unknown_keys(m, "model", {"family"});
    if (m.contains("family")) config.model.family = require_string(m["family"], "model.family");
  }
  if (j.contains("error")) {
    const auto& e = j.at("error");
    reject_unknown_keys(e, "error", {"epsilon", "epsilon_list"});
    if (e.contains("epsilon") && e.contains("epsilon_list")) {
      throw ValidationError(
          "config: give either `error.epsilon` or `error.epsilon_list`");
    }
    if (e.contains("epsilon")) {
      config.error.epsilon_list = {require_number(e["epsilon"], "error.epsilon")};
    } else if (e.contains("epsilon_list")) {
      if (!e["epsilon_list"].is_array() || e["epsilon_list"].empty()) {
        throw ValidationError("config: `error.epsilon_list` must be a non-empty array");
      }
      config.error.epsilon_list.clear();
      for (const auto& item : e["epsilon_list"]) {
        config.error.epsilon_list.push_back(
            require_number(item, "error.epsilon_list[]"));
      }
    }
  }
  if (j.contains("propagator")) {
    const auto& p = j.at("propagator");
    reject_unknown_keys(p, "propagator", {"steps_per_segment"});
    if (p.contains("steps_per_segment")) {
      config.propagator.steps_per_segment = static_cast<int>(
          require_number(p["steps_per_segment"], "propagator.steps_per_segment"));
    }
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    reject_unknown_keys(o, "output", {"directory", "format"});
    if (o.contains("directory")) {
      config.output.directory = require_string(o["directory"], "output.directory");
    }
    if (o.contains("format")) config.output.format = require_string(o["format"], "output.format");
  }

  if (config.model.family != "k22_zero" && config.model.family != "k22_negbeta") {
    throw ValidationError("config: model.family must be k22_zero or k22_negbeta");
  }
  if (config.path.kind != "fig1" && config.path.kind != "hadamard" &&
      config.path.kind != "custom") {
    throw ValidationError("config: path.kind must be fig1, hadamard, or custom");
  }
  if (config.output.format != "csv" && config.output.format != "json") {
    throw ValidationError("config: output.format must be csv or json");
  }
  for (double epsilon : config.error.epsilon_list) {
    ErrorModel{epsilon}.validate();
  }
  if (config.path.kind == "custom" && config.path.csv_source.empty()) {
    throw ValidationError("config: path.kind custom requires path.csv_source");
  }
  return config;
}

RunConfig load_config(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) {
    throw ValidationError("config: cannot open " + filename);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config: " + filename + ": " + e.what());
  }
  return config_from_json(j);
}

PathSpec build_path(const RunConfig& config, bool validate) {
  if (config.path.kind == "fig1") {
    return make_fig1_path(config.path.alpha0, config.path.tau1,
                          config.path.tau2, config.path.tau);
  }
  if (config.path.kind == "hadamard") {
    return make_hadamard_path(config.path.tau1, config.path.tau2,
                              config.path.tau);
  }
  if (!std::filesystem::exists(config.path.csv_source)) {
    throw ValidationError("config: path.csv_source does not exist: " +
                          config.path.csv_source);
  }
  return load_path_csv(config.path.csv_source, validate);
}

LambdaModel build_model(const RunConfig& config, const PathSpec& path) {
  if (config.model.family == "k22_zero") {
    return model_k22_zero(config.gate.theta, config.gate.phi, path);
  }
  // Regularity scan: the family diverges at the pole under azimuthal motion.
  for (const PathSegment& seg : path.segments()) {
    const int n = 512;
    for (int k = 0; k <= n; ++k) {
      const double t = seg.t_start + (seg.t_end - seg.t_start) * k / n;
      if (std::abs(seg.beta_dot(t)) > 1e-12 &&
          seg.alpha(t) < kNegBetaAlphaFloor) {
        throw SingularityError(
            "k22_negbeta family: alpha < 1e-3 while beta moves; the "
            "detuning diverges at the pole",
            t);
      }
    }
  }
  return model_k22_negbeta(config.gate.theta, config.gate.phi, path);
}

GateSpec resolve_gate(const RunConfig& config, const PathSpec& path) {
  GateSpec gate;
  gate.theta = config.gate.theta;
  gate.phi = config.gate.phi;
  if (config.gate.phi_tau) {
    gate.phi_tau = *config.gate.phi_tau;
  } else {
    double angle = std::fmod(solid_angle(path), 2.0 * kPi);
    if (angle < 0.0) angle += 2.0 * kPi;
    gate.phi_tau = angle;
  }
  gate.validate();
  return gate;
}

PropagatorConfig propagator_config(const RunConfig& config) {
  PropagatorConfig c;
  c.steps_per_segment = config.propagator.steps_per_segment;
  c.validate();
  return c;
}

int cmd_gate(const RunConfig& config, std::ostream& log) {
  return run_guarded(log, [&] {
    const PathSpec path = build_path(config);
    const LambdaModel base = build_model(config, path);
    const GateSpec gate = resolve_gate(config, path);
    const PropagatorConfig prop = propagator_config(config);
    const Frame frame = Frame::one_qubit(config.gate.theta, config.gate.phi, path);

    const double epsilon = config.error.epsilon_list.front();
    const LambdaModel model = apply_error(base, ErrorModel{epsilon});
    const Matrix u = evolve_operator(model, 0.0, model.period(), prop);
    const GateReport report = extract_gate(u, frame, gate, prop);
    const HolonomyReport holonomy = verify_holonomy(frame, base, gate);

    nlohmann::json j = gate_report_to_json(report);
    j["epsilon"] = epsilon;
    j["gate"] = {{"theta", gate.theta}, {"phi", gate.phi}, {"phi_tau", gate.phi_tau}};
    j["family"] = config.model.family;
    j["commutation_residual"] = format_double(holonomy.commutation_residual);
    j["k22_integral"] = format_double(holonomy.k22_integral);
    j["geometric_angle"] = holonomy.geometric_angle;
    write_file_atomic(output_path(config, "gate_report.json").string(),
                      j.dump(2) + "\n");
    log << "gate fidelity " << format_double(report.fidelity_vs_analytic)
        << ", leakage " << format_double(report.leakage) << "\n";
  });
}

int cmd_robustness(const RunConfig& config, std::ostream& log) {
  return run_guarded(log, [&] {
    if (config.error.epsilon_list.empty()) {
      throw ValidationError("robustness: epsilon list is empty");
    }
    const PropagatorConfig prop = propagator_config(config);
    LoopTiming timing{config.path.tau1, config.path.tau2, config.path.tau};
    const auto rows =
        run_hadamard_robustness(config.error.epsilon_list, prop, timing);
    if (config.output.format == "json") {
      write_file_atomic(output_path(config, "robustness.json").string(),
                        rows_to_json(rows).dump(2) + "\n");
    } else {
      write_file_atomic(output_path(config, "robustness.csv").string(),
                        robustness_csv(rows));
    }
    for (const auto& row : rows) {
      log << "epsilon " << format_double(row.epsilon) << " -> fidelity "
          << format_double(row.fidelity) << "\n";
    }
  });
}

int cmd_pulse_area(const RunConfig& config, std::ostream& log) {
  return run_guarded(log, [&] {
    std::vector<double> grid;
    const int points = 50;
    for (int i = 0; i < points; ++i) {
      grid.push_back(0.2 + (kPi - 0.2) * i / (points - 1));
    }
    LoopTiming timing{config.path.tau1, config.path.tau2, config.path.tau};
    const auto rows = run_pulse_area_scan(grid, timing);
    if (config.output.format == "json") {
      write_file_atomic(output_path(config, "pulse_area.json").string(),
                        rows_to_json(rows).dump(2) + "\n");
    } else {
      write_file_atomic(output_path(config, "pulse_area.csv").string(),
                        area_scan_csv(rows));
    }
    log << "pulse-area scan: " << rows.size() << " rows\n";
  });
}

int cmd_population(const RunConfig& config, int sample_count,
                   std::ostream& log) {
  return run_guarded(log, [&] {
    const PropagatorConfig prop = propagator_config(config);
    LoopTiming timing{config.path.tau1, config.path.tau2, config.path.tau};
    const bool single = config.error.epsilon_list.size() == 1;
    nlohmann::json index = nlohmann::json::array();
    for (std::size_t i = 0; i < config.error.epsilon_list.size(); ++i) {
      const double epsilon = config.error.epsilon_list[i];
      const auto points =
          run_hadamard_population(epsilon, sample_count, prop, timing);
      const std::string name =
          single ? "population.csv" : "population_" + std::to_string(i) + ".csv";
      write_file_atomic(output_path(config, name).string(),
                        population_csv(points));
      index.push_back({{"file", name}, {"epsilon", epsilon}});
    }
    if (!single) {
      write_file_atomic(output_path(config, "population_index.json").string(),
                        index.dump(2) + "\n");
    }
    log << "population trace(s) written\n";
  });
}

int cmd_two_qubit(const RunConfig& config, std::ostream& log) {
  return run_guarded(log, [&] {
    const PropagatorConfig prop = propagator_config(config);
    if (config.path.kind == "custom") {
      throw ValidationError("two-qubit: built-in loop paths only");
    }
    const double alpha0 =
        config.path.kind == "hadamard" ? kPi / 2.0 : config.path.alpha0;
    const K22Choice family = config.model.family == "k22_zero"
                                 ? K22Choice::kZero
                                 : K22Choice::kNegBetaDot;
    if (family == K22Choice::kNegBetaDot && alpha0 < kNegBetaAlphaFloor) {
      throw SingularityError("k22_negbeta family: alpha0 below the pole floor",
                             0.0);
    }
    LoopTiming timing{config.path.tau1, config.path.tau2, config.path.tau};
    const TwoQubitResult result = run_two_qubit_demo(
        config.gate.theta, config.gate.phi, alpha0, family, prop, timing);

    nlohmann::json j = gate_report_to_json(result.report);
    j["off_block_norm"] = format_double(result.off_block_norm);
    j["static_block_residual"] = format_double(result.static_block_residual);
    j["block_vs_one_qubit"] = format_double(result.block_vs_one_qubit);
    write_file_atomic(output_path(config, "two_qubit_report.json").string(),
                      j.dump(2) + "\n");
    log << "two-qubit fidelity "
        << format_double(result.report.fidelity_vs_analytic) << "\n";
  });
}

int cmd_verify(const RunConfig& config, std::ostream& log) {
  int exit_code = kExitOk;
  const int inner = run_guarded(log, [&] {
    const PathSpec path = build_path(config, /*validate=*/false);
    const LambdaModel model = build_model(config, path);
    const GateSpec gate = resolve_gate(config, path);
    const Frame frame = Frame::one_qubit(config.gate.theta, config.gate.phi, path);
    const double tau = path.period();
    const bool negbeta = config.model.family == "k22_negbeta";

    std::vector<Check> checks;
    checks.push_back(make_check("path_cyclicity", path.cyclicity_residual(), 1e-12));
    if (negbeta) {
      checks.push_back(make_check("beta_closure_mod_2pi", path.beta_wrap_defect(), 1e-10));
    }

    double ortho = 0.0;
    double antiherm = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = tau * i / 1000;
      const Matrix basis = frame.basis_at(t);
      const Matrix deriv = frame.derivative_at(t);
      ortho = std::max(ortho, max_norm(basis.adjoint() * basis -
                                       Matrix::Identity(3, 3)));
      const Matrix overlap = basis.adjoint() * deriv;
      antiherm = std::max(antiherm, max_norm(overlap + overlap.adjoint().eval()));
    }
    checks.push_back(make_check("frame_orthonormality", ortho, 1e-12));
    checks.push_back(make_check("frame_derivative_antihermiticity", antiherm, 1e-8));

    double a_residual = 0.0;
    double k_pattern = 0.0;
    double k_family = 0.0;
    for (int i = 0; i <= 500; ++i) {
      const double t = tau * i / 500;
      a_residual = std::max(a_residual, max_norm(connection_matrix(frame, t) -
                                                 connection_closed_form(frame, t)));
      try {
        const Matrix k = dynamical_matrix(frame, model, t);
        k_pattern = std::max({k_pattern, std::abs(k(0, 0)), std::abs(k(0, 1)),
                              std::abs(k(1, 0))});
        const double target = negbeta ? -path.eval(t).beta_dot : 0.0;
        k_family = std::max(k_family, std::abs(k(1, 1).real() - target));
      } catch (const SingularityError&) {
      }
    }
    checks.push_back(make_check("connection_closed_form", a_residual, 1e-10));
    checks.push_back(make_check("dynamical_zero_pattern", k_pattern, 1e-10));
    checks.push_back(make_check("dynamical_diagonal_family", k_family, 1e-10));
    checks.push_back(
        make_check("commutation", commutation_residual(frame, model, 64), 1e-12));
    checks.push_back(
        make_check("k22_cancellation", k22_cancellation(frame, model), 1e-8));

    const double angle = solid_angle(path);
    if (config.path.kind != "custom") {
      const double alpha0 =
          config.path.kind == "hadamard" ? kPi / 2.0 : config.path.alpha0;
      checks.push_back(make_check("solid_angle_closed_form",
                                  angle - kPi * (1.0 - std::cos(alpha0)), 1e-8));
    }
    double wrapped = std::fmod(angle, 2.0 * kPi);
    if (wrapped < 0.0) wrapped += 2.0 * kPi;
    checks.push_back(make_check("geometric_angle_vs_solid_angle",
                                geometric_angle(frame, 2000) - wrapped, 1e-8));

    double reconstruction = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double t = tau * i / 200;
      try {
        reconstruction =
            std::max(reconstruction, max_norm(reconstruct_hamiltonian(
                                                  frame, model, t) -
                                              model.assemble(t)));
      } catch (const SingularityError&) {
      }
    }
    checks.push_back(make_check("hamiltonian_reconstruction", reconstruction, 1e-10));

    bool all_pass = true;
    nlohmann::json arr = nlohmann::json::array();
    for (const Check& check : checks) {
      all_pass = all_pass && check.pass;
      arr.push_back({{"name", check.name},
                     {"value", format_double(check.value)},
                     {"threshold", format_double(check.threshold)},
                     {"pass", check.pass}});
      log << (check.pass ? "pass " : "FAIL ") << check.name << " = "
          << format_double(check.value) << " (threshold "
          << format_double(check.threshold) << ")\n";
    }
    nlohmann::json j;
    j["checks"] = arr;
    j["all_pass"] = all_pass;
    write_file_atomic(output_path(config, "verify_report.json").string(),
                      j.dump(2) + "\n");
    if (!all_pass) exit_code = kExitNumerics;
  });
  return inner != kExitOk ? inner : exit_code;
}

int cmd_export_pulse(const RunConfig& config, int grid_size,
                     std::ostream& log) {
  return run_guarded(log, [&] {
    const PathSpec path = build_path(config);
    const LambdaModel model = build_model(config, path);
    write_file_atomic(output_path(config, "pulse_schedule.csv").string(),
                      pulse_schedule_csv(model, grid_size));
    write_file_atomic(output_path(config, "pulse_schedule.json").string(),
                      pulse_sidecar_json(model).dump(2) + "\n");
    log << "pulse schedule written (" << grid_size << " samples)\n";
  });
}

}  // namespace holosim::cli
