#pragma once

#include <vector>

#include "holosim/frame.hpp"
#include "holosim/hamiltonian.hpp"
#include "holosim/linalg.hpp"
#include "holosim/path.hpp"

namespace holosim {

// A_lk(t) = i <nu_l(t)| d/dt nu_k(t)> on the computational block (L x L).
Matrix connection_matrix(const Frame& f, double t);

// Closed-form connection for the built-in frames: zero except the last
// computational diagonal, -beta_dot * (1 - cos alpha) / 2. Test oracle.
Matrix connection_closed_form(const Frame& f, double t);

// K_lk(t) = <nu_l(t)| H(t) |nu_k(t)> on the computational block (L x L).
Matrix dynamical_matrix(const Frame& f, const LambdaModel& m, double t);

// max over a grid_size x grid_size grid of (t, t') of
// ||[A(t), K(t')]||_max, skipping singular samples.
double commutation_residual(const Frame& f, const LambdaModel& m,
                            int grid_size);

// Same residual for explicitly supplied matrix families.
double commutation_residual(const std::vector<Matrix>& as,
                            const std::vector<Matrix>& ks);

// Integral over one period of the last computational diagonal of K; must
// vanish for the dynamical phase factor to drop out.
double k22_cancellation(const Frame& f, const LambdaModel& m,
                        double abs_tol = 1e-12);

// Coefficient propagator C(tau) = T exp(i * integral of (A - K)), computed
// as an ordered product of per-step exponentials at step midpoints with
// `steps_per_segment` steps on each path segment. Later times multiply on
// the left.
Matrix coefficient_propagator(const Frame& f, const LambdaModel& m,
                              int steps_per_segment);

// Geometric part alone: T exp(i * integral of A).
Matrix geometric_propagator(const Frame& f, int steps_per_segment);

// Rotation angle read off the geometric propagator, in [0, 2*pi).
double geometric_angle(const Frame& f, int steps_per_segment);

// exp(i * phi_tau * n.sigma / 2) with n = (sin t cos p, sin t sin p, cos t).
Matrix analytic_gate(const GateSpec& g);

// Gate on the four-level computational space: identity on (|00>, |01>) and
// the phase-coherent one-qubit holonomy on (|10>, |11>).
Matrix analytic_gate_two_qubit(const GateSpec& g);

// Right-hand side of the frame/Hamiltonian consistency relation: auxiliary
// couplings i<nu_k|d/dt nu_N>, the computational block K, and the auxiliary
// diagonal i<nu_N|d/dt nu_N> - gamma_rate. Equals the assembled drive
// matrix for a consistent model.
Matrix reconstruct_hamiltonian(const Frame& f, const LambdaModel& m, double t);

struct HolonomyReport {
  double a_closed_form_residual = 0.0;
  double commutation_residual = 0.0;
  double k22_integral = 0.0;
  Matrix analytic_gate;
  double geometric_angle = 0.0;
};

HolonomyReport verify_holonomy(const Frame& f, const LambdaModel& m,
                               const GateSpec& g, int grid_size = 64,
                               int steps_per_segment = 2000);

}  // namespace holosim
