#include "holosim/experiments.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "holosim/errors.hpp"
#include "holosim/holonomy.hpp"

namespace holosim {

namespace {

constexpr double kPi = std::numbers::pi;

LambdaModel build_family(K22Choice family, double theta, double phi,
                         const PathSpec& path) {
  switch (family) {
    case K22Choice::kZero:
      return model_k22_zero(theta, phi, path);
    case K22Choice::kNegBetaDot:
      return model_k22_negbeta(theta, phi, path);
    case K22Choice::kCustom:
      break;
  }
  throw ValidationError("experiments: family must be k22_zero or k22_negbeta");
}

Vector ket0() {
  Vector v = Vector::Zero(3);
  v[0] = 1.0;
  return v;
}

}  // namespace

std::vector<AreaRow> run_pulse_area_scan(const std::vector<double>& alpha_grid,
                                         const LoopTiming& timing) {
  std::vector<AreaRow> rows;
  rows.reserve(alpha_grid.size());
  for (double alpha0 : alpha_grid) {
    if (!(alpha0 > 0.0 && alpha0 <= kPi)) {
      throw ValidationError("pulse-area scan: alpha0 must lie in (0, pi]");
    }
    const PathSpec path =
        make_fig1_path(alpha0, timing.tau1, timing.tau2, timing.tau);
    AreaRow row;
    row.alpha0 = alpha0;
    row.phi_tau = kPi * (1.0 - std::cos(alpha0));
    row.area_k22_zero = pulse_area(model_k22_zero(0.0, 0.0, path));
    try {
      row.area_k22_negbeta = pulse_area(model_k22_negbeta(0.0, 0.0, path));
    } catch (const SingularityError&) {
      row.negbeta_singular = true;
      row.area_k22_negbeta = std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<RobustnessRow> run_hadamard_robustness(
    const std::vector<double>& epsilon_list, const PropagatorConfig& c,
    const LoopTiming& timing) {
  const PathSpec path =
      make_hadamard_path(timing.tau1, timing.tau2, timing.tau);
  const LambdaModel model = model_k22_zero(kPi / 4.0, 0.0, path);
  const GateSpec gate{kPi / 4.0, 0.0, kPi};
  const Vector desired = (analytic_gate(gate) * ket0().head(2)).eval();

  Vector desired3 = Vector::Zero(3);
  desired3.head(2) = desired;

  std::vector<RobustnessRow> rows;
  rows.reserve(epsilon_list.size());
  for (double epsilon : epsilon_list) {
    const LambdaModel noisy = apply_error(model, ErrorModel{epsilon});
    const Vector out = evolve_operator(noisy, 0.0, model.period(), c) * ket0();
    rows.push_back({epsilon, state_fidelity(desired3, out)});
  }
  return rows;
}

std::vector<std::pair<double, double>> run_hadamard_population(
    double epsilon, int sample_count, const PropagatorConfig& c,
    const LoopTiming& timing) {
  const PathSpec path =
      make_hadamard_path(timing.tau1, timing.tau2, timing.tau);
  const LambdaModel model = model_k22_zero(kPi / 4.0, 0.0, path);
  const GateSpec gate{kPi / 4.0, 0.0, kPi};
  Vector desired = Vector::Zero(3);
  desired.head(2) = analytic_gate(gate) * ket0().head(2);

  const LambdaModel noisy = apply_error(model, ErrorModel{epsilon});
  std::vector<std::pair<double, double>> points;
  points.reserve(sample_count);
  for (const TrajectoryPoint& pt :
       evolve_state(noisy, ket0(), sample_count, c)) {
    points.emplace_back(pt.t / model.period(),
                        state_fidelity(desired, pt.state));
  }
  return points;
}

GateVerificationSummary run_gate_verification(int trials, std::uint64_t seed,
                                              const PropagatorConfig& c,
                                              const LoopTiming& timing) {
  if (trials < 1) {
    throw ValidationError("gate verification: trials must be >= 1");
  }
  std::mt19937_64 rng(seed);
  // Keep clear of the neg-beta family's polar divergence and of degenerate
  // axes while still covering the sphere.
  std::uniform_real_distribution<double> theta_dist(0.1, kPi - 0.1);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> alpha_dist(0.2, kPi - 0.2);

  GateVerificationSummary summary;
  int index = 0;
  for (int i = 0; i < trials; ++i) {
    const double theta = theta_dist(rng);
    const double phi = phi_dist(rng);
    const double alpha0 = alpha_dist(rng);
    const PathSpec path =
        make_fig1_path(alpha0, timing.tau1, timing.tau2, timing.tau);
    const GateSpec gate{theta, phi, kPi * (1.0 - std::cos(alpha0))};
    const Frame frame = Frame::one_qubit(theta, phi, path);

    for (K22Choice family : {K22Choice::kZero, K22Choice::kNegBetaDot}) {
      const LambdaModel model = build_family(family, theta, phi, path);
      const Matrix u = evolve_operator(model, 0.0, model.period(), c);
      const GateReport report = extract_gate(u, frame, gate, c);

      GateTrial trial;
      trial.index = index++;
      trial.theta = theta;
      trial.phi = phi;
      trial.alpha0 = alpha0;
      trial.family = family;
      trial.fidelity = report.fidelity_vs_analytic;
      trial.leakage = report.leakage;
      trial.commutation_residual = commutation_residual(frame, model, 48);
      trial.k22_integral = k22_cancellation(frame, model);
      summary.trials.push_back(trial);

      summary.min_fidelity = std::min(summary.min_fidelity, trial.fidelity);
      summary.max_leakage = std::max(summary.max_leakage, trial.leakage);
      summary.max_commutation_residual = std::max(
          summary.max_commutation_residual, trial.commutation_residual);
      summary.max_k22_integral =
          std::max(summary.max_k22_integral, std::abs(trial.k22_integral));
    }
  }
  return summary;
}

TwoQubitResult run_two_qubit_demo(double theta, double phi, double alpha0,
                                  K22Choice family, const PropagatorConfig& c,
                                  const LoopTiming& timing) {
  const PathSpec path =
      make_fig1_path(alpha0, timing.tau1, timing.tau2, timing.tau);
  const GateSpec gate{theta, phi, kPi * (1.0 - std::cos(alpha0))};
  const LambdaModel model = build_family(family, theta, phi, path);

  const Frame two = Frame::two_qubit(theta, phi, path);
  const Matrix u5 = evolve_operator_two_qubit(model, 0.0, model.period(), c);

  TwoQubitResult result;
  result.report = extract_gate(u5, two, gate, c);

  const Matrix& block = result.report.realized_gate.entries;
  result.off_block_norm = std::max(max_norm(block.block<2, 2>(0, 2)),
                                   max_norm(block.block<2, 2>(2, 0)));
  result.static_block_residual =
      max_norm(block.block<2, 2>(0, 0) - Matrix::Identity(2, 2));

  const Matrix u3 = evolve_operator(model, 0.0, model.period(), c);
  result.block_vs_one_qubit =
      max_norm(block.block<2, 2>(2, 2) - u3.topLeftCorner(2, 2));
  return result;
}

}  // namespace holosim
