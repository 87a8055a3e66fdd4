#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "holosim/frame.hpp"
#include "holosim/hamiltonian.hpp"
#include "holosim/linalg.hpp"

namespace holosim {

struct PropagatorConfig {
  int steps_per_segment = 4000;
  double unitarity_tolerance = 1e-10;
  // When set, every evolution is repeated at half resolution and the two
  // results must agree to 1e-6 in max-norm.
  bool convergence_check = false;

  void validate() const;  // steps_per_segment >= 16
};

// T exp(-i * integral of H) over [t0, t1] by the exponential midpoint rule:
// an ordered product of exp(-i * H(midpoint) * dt) factors, split at the
// model breakpoints. Each factor is exactly unitary; the result's unitarity
// residual is checked against the configured tolerance.
Matrix evolve_operator(const LambdaModel& m, double t0, double t1,
                       const PropagatorConfig& c);

// Same evolution in the five-level two-qubit space.
Matrix evolve_operator_two_qubit(const LambdaModel& m, double t0, double t1,
                                 const PropagatorConfig& c);

struct TrajectoryPoint {
  double t = 0.0;
  Vector state;
};

// State trajectory at `sample_count` uniform times spanning [0, period].
// The norm is checked at every sample.
std::vector<TrajectoryPoint> evolve_state(const LambdaModel& m,
                                          const Vector& psi0, int sample_count,
                                          const PropagatorConfig& c);

// Realized gate on the computational subspace plus quality measures.
struct GateReport {
  Operator realized_gate;            // L x L block over the first L levels
  double leakage = 0.0;              // worst-case population loss
  double fidelity_vs_analytic = 0.0;
  double unitarity_residual = 0.0;
  std::vector<std::pair<double, double>> population_trace;  // optional (t, P)
};

// Projects the full-period evolution onto the computational levels, measures
// the worst-case leakage (smallest singular value squared of the block), and
// scores the block against the frame-appropriate analytic holonomy.
GateReport extract_gate(const Matrix& u, const Frame& f, const GateSpec& g,
                        const PropagatorConfig& c);

}  // namespace holosim
