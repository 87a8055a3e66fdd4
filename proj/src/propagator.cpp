#include "holosim/propagator.hpp"

#include <algorithm>
#include <cmath>

#include "holosim/errors.hpp"
#include "holosim/holonomy.hpp"

namespace holosim {

namespace {

struct Interval {
  double start = 0.0;
  double end = 0.0;
  int steps = 0;
};

// Split [t0, t1] at the breakpoints; each piece gets a share of
// steps_per_segment proportional to how much of its segment it covers, so
// step grids of nested evolutions line up.
std::vector<Interval> plan_intervals(double t0, double t1, double period,
                                     const std::vector<double>& breakpoints,
                                     int steps_per_segment) {
  std::vector<double> edges{0.0};
  for (double b : breakpoints) edges.push_back(b);
  edges.push_back(period);

  std::vector<Interval> plan;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double lo = std::max(t0, edges[i]);
    const double hi = std::min(t1, edges[i + 1]);
    if (hi - lo <= 1e-15 * std::max(1.0, period)) continue;
    const double fraction = (hi - lo) / (edges[i + 1] - edges[i]);
    const int steps = std::max(
        1, static_cast<int>(std::lround(steps_per_segment * fraction)));
    plan.push_back({lo, hi, steps});
  }
  return plan;
}

Matrix evolve_impl(const std::function<Matrix(double)>& hamiltonian,
                   const LambdaModel& m, double t0, double t1,
                   const PropagatorConfig& c, Eigen::Index dim) {
  c.validate();
  if (t1 < t0) {
    throw ValidationError("evolve: t1 must be >= t0");
  }
  const double slack = 1e-12 * std::max(1.0, m.period());
  if (t0 < -slack || t1 > m.period() + slack) {
    throw ValidationError("evolve: [t0, t1] outside the model domain");
  }

  auto run = [&](int steps_per_segment) {
    Matrix u = Matrix::Identity(dim, dim);
    for (const Interval& iv :
         plan_intervals(t0, t1, m.period(), m.breakpoints(),
                        steps_per_segment)) {
      const double dt = (iv.end - iv.start) / iv.steps;
      for (int k = 0; k < iv.steps; ++k) {
        const double mid = iv.start + (k + 0.5) * dt;
        u = expm_generator(hamiltonian(mid), dt) * u;
      }
    }
    return u;
  };

  const Matrix u = run(c.steps_per_segment);
  const double residual = unitarity_residual(u);
  if (residual > c.unitarity_tolerance) {
    throw NumericsError(
        "evolve: unitarity residual " + std::to_string(residual) +
        " exceeds tolerance; increase steps_per_segment");
  }
  if (c.convergence_check && c.steps_per_segment >= 32) {
    const Matrix coarse = run(c.steps_per_segment / 2);
    if (max_norm(u - coarse) > 1e-6) {
      throw NumericsError(
          "evolve: halving the step count changes the result by more than "
          "1e-6; increase steps_per_segment");
    }
  }
  return u;
}

}  // namespace

void PropagatorConfig::validate() const {
  if (steps_per_segment < 16) {
    throw ValidationError("propagator: steps_per_segment must be >= 16");
  }
  if (!(unitarity_tolerance > 0.0)) {
    throw ValidationError("propagator: unitarity_tolerance must be positive");
  }
}

Matrix evolve_operator(const LambdaModel& m, double t0, double t1,
                       const PropagatorConfig& c) {
  return evolve_impl([&m](double t) { return m.assemble(t); }, m, t0, t1, c,
                     3);
}

Matrix evolve_operator_two_qubit(const LambdaModel& m, double t0, double t1,
                                 const PropagatorConfig& c) {
  return evolve_impl([&m](double t) { return m.assemble_two_qubit(t); }, m, t0,
                     t1, c, 5);
}

std::vector<TrajectoryPoint> evolve_state(const LambdaModel& m,
                                          const Vector& psi0, int sample_count,
                                          const PropagatorConfig& c) {
  c.validate();
  if (sample_count < 2) {
    throw ValidationError("evolve_state: sample_count must be >= 2");
  }
  if (std::abs(psi0.squaredNorm() - 1.0) > 1e-12) {
    throw ValidationError("evolve_state: initial state must be normalized");
  }

  const double tau = m.period();
  std::vector<TrajectoryPoint> trajectory;
  trajectory.reserve(sample_count);
  trajectory.push_back({0.0, psi0});

  Vector psi = psi0;
  for (int i = 1; i < sample_count; ++i) {
    const double t_prev = tau * (i - 1) / (sample_count - 1);
    const double t_now = tau * i / (sample_count - 1);
    psi = evolve_impl([&m](double t) { return m.assemble(t); }, m, t_prev,
                      t_now, c, psi0.size()) *
          psi;
    if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) {
      throw NumericsError("evolve_state: norm drift at t = " +
                          std::to_string(t_now));
    }
    trajectory.push_back({t_now, psi});
  }
  return trajectory;
}

GateReport extract_gate(const Matrix& u, const Frame& f, const GateSpec& g,
                        const PropagatorConfig& c) {
  if (u.rows() != f.dimension() || u.cols() != f.dimension()) {
    throw ValidationError("extract_gate: operator does not match the frame");
  }
  const double u_residual = unitarity_residual(u);
  if (u_residual > c.unitarity_tolerance) {
    throw NumericsError("extract_gate: input evolution is not unitary");
  }

  const Eigen::Index l = f.computational_dim();
  const Matrix block = u.topLeftCorner(l, l);

  Eigen::JacobiSVD<Matrix> svd(block);
  const double smallest = svd.singularValues().minCoeff();

  GateReport report;
  report.realized_gate.entries = block;
  report.realized_gate.basis_labels.assign(f.level_labels().begin(),
                                           f.level_labels().begin() + l);
  report.leakage = std::max(0.0, 1.0 - smallest * smallest);
  report.unitarity_residual = u_residual;
  const Matrix target =
      l == 2 ? analytic_gate(g) : analytic_gate_two_qubit(g);
  report.fidelity_vs_analytic = phase_insensitive_overlap(block, target);
  return report;
}

}  // namespace holosim
