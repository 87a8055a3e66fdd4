#include "holosim/holonomy.hpp"

#include <cmath>
#include <numbers>

#include "holosim/errors.hpp"
#include "holosim/quadrature.hpp"

namespace holosim {

namespace {

constexpr double kPi = std::numbers::pi;

Matrix full_hamiltonian(const Frame& f, const LambdaModel& m, double t) {
  return f.dimension() == 3 ? m.assemble(t) : m.assemble_two_qubit(t);
}

// Ordered product of exp(i * G(t_mid) * dt) factors over [0, period], with
// the generator sampled at step midpoints and segments split at breakpoints.
Matrix ordered_exponential(const std::function<Matrix(double)>& generator,
                           double period, const std::vector<double>& breaks,
                           int steps_per_segment, Eigen::Index dim) {
  std::vector<double> cuts{0.0};
  for (double b : breaks) {
    if (b > 0.0 && b < period) cuts.push_back(b);
  }
  cuts.push_back(period);

  Matrix product = Matrix::Identity(dim, dim);
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double dt = (cuts[i + 1] - cuts[i]) / steps_per_segment;
    for (int k = 0; k < steps_per_segment; ++k) {
      const double mid = cuts[i] + (k + 0.5) * dt;
      product = expm_generator(generator(mid), -dt) * product;
    }
  }
  return product;
}

}  // namespace

Matrix connection_matrix(const Frame& f, double t) {
  const Eigen::Index dim = f.computational_dim();
  const auto basis = f.basis_at(t).leftCols(dim);
  const auto deriv = f.derivative_at(t).leftCols(dim);
  return kImag * (basis.adjoint() * deriv);
}

Matrix connection_closed_form(const Frame& f, double t) {
  const PathPoint p = f.path().eval(t);
  const Eigen::Index dim = f.computational_dim();
  Matrix a = Matrix::Zero(dim, dim);
  a(dim - 1, dim - 1) = -0.5 * p.beta_dot * (1.0 - std::cos(p.alpha));
  return a;
}

Matrix dynamical_matrix(const Frame& f, const LambdaModel& m, double t) {
  const Eigen::Index dim = f.computational_dim();
  const auto basis = f.basis_at(t).leftCols(dim);
  return basis.adjoint() * full_hamiltonian(f, m, t) * basis;
}

double commutation_residual(const std::vector<Matrix>& as,
                            const std::vector<Matrix>& ks) {
  double worst = 0.0;
  for (const Matrix& a : as) {
    for (const Matrix& k : ks) {
      worst = std::max(worst, max_norm(a * k - k * a));
    }
  }
  return worst;
}

double commutation_residual(const Frame& f, const LambdaModel& m,
                            int grid_size) {
  if (grid_size < 2) {
    throw ValidationError("commutation residual: grid_size must be >= 2");
  }
  const double tau = m.period();
  std::vector<Matrix> as;
  std::vector<Matrix> ks;
  as.reserve(grid_size);
  ks.reserve(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double t = tau * i / (grid_size - 1);
    as.push_back(connection_matrix(f, t));
    try {
      ks.push_back(dynamical_matrix(f, m, t));
    } catch (const SingularityError&) {
      // singular sample: contributes nothing to the scan
    }
  }
  return commutation_residual(as, ks);
}

double k22_cancellation(const Frame& f, const LambdaModel& m, double abs_tol) {
  const Eigen::Index last = f.computational_dim() - 1;
  return integrate_segmented(
      [&](double t) { return dynamical_matrix(f, m, t)(last, last).real(); },
      0.0, m.period(), m.breakpoints(), abs_tol);
}

Matrix coefficient_propagator(const Frame& f, const LambdaModel& m,
                              int steps_per_segment) {
  if (steps_per_segment < 1) {
    throw ValidationError("coefficient propagator: steps must be >= 1");
  }
  return ordered_exponential(
      [&](double t) {
        return (connection_matrix(f, t) - dynamical_matrix(f, m, t)).eval();
      },
      m.period(), m.breakpoints(), steps_per_segment, f.computational_dim());
}

Matrix geometric_propagator(const Frame& f, int steps_per_segment) {
  if (steps_per_segment < 1) {
    throw ValidationError("geometric propagator: steps must be >= 1");
  }
  return ordered_exponential(
      [&](double t) { return connection_matrix(f, t); }, f.path().period(),
      f.path().breakpoints(), steps_per_segment, f.computational_dim());
}

double geometric_angle(const Frame& f, int steps_per_segment) {
  const Matrix c = geometric_propagator(f, steps_per_segment);
  const Eigen::Index last = f.computational_dim() - 1;
  double angle = -std::arg(c(last, last) * std::conj(c(0, 0)));
  if (angle < 0.0) angle += 2.0 * kPi;
  return angle;
}

Matrix analytic_gate(const GateSpec& g) {
  g.validate();
  const Matrix axis = std::sin(g.theta) * std::cos(g.phi) * pauli_x() +
                      std::sin(g.theta) * std::sin(g.phi) * pauli_y() +
                      std::cos(g.theta) * pauli_z();
  return std::cos(0.5 * g.phi_tau) * Matrix::Identity(2, 2) +
         kImag * std::sin(0.5 * g.phi_tau) * axis;
}

Matrix analytic_gate_two_qubit(const GateSpec& g) {
  Matrix gate = Matrix::Identity(4, 4);
  // On the (|10>, |11>) pair the holonomy carries the phase relative to the
  // untouched (|00>, |01>) levels; no global-phase freedom is left here.
  gate.block<2, 2>(2, 2) =
      std::exp(-kImag * 0.5 * g.phi_tau) * analytic_gate(g);
  return gate;
}

Matrix reconstruct_hamiltonian(const Frame& f, const LambdaModel& m, double t) {
  const Eigen::Index n = f.dimension();
  const Eigen::Index l = f.computational_dim();
  const Matrix basis = f.basis_at(t);
  const Matrix deriv = f.derivative_at(t);
  const Matrix k = dynamical_matrix(f, m, t);

  Matrix h = Matrix::Zero(n, n);
  const auto aux = basis.col(n - 1);
  const auto aux_dot = deriv.col(n - 1);
  for (Eigen::Index i = 0; i < l; ++i) {
    const Complex coupling = kImag * basis.col(i).dot(aux_dot);
    h += coupling * basis.col(i) * aux.adjoint();
    h += std::conj(coupling) * aux * basis.col(i).adjoint();
  }
  for (Eigen::Index i = 0; i < l; ++i) {
    for (Eigen::Index j = 0; j < l; ++j) {
      h += k(i, j) * basis.col(i) * basis.col(j).adjoint();
    }
  }
  const Complex aux_diag = kImag * aux.dot(aux_dot) - m.gamma_rate(t);
  h += aux_diag * aux * aux.adjoint();
  return h;
}

HolonomyReport verify_holonomy(const Frame& f, const LambdaModel& m,
                               const GateSpec& g, int grid_size,
                               int steps_per_segment) {
  HolonomyReport report;
  const double tau = m.period();
  const int samples = 500;
  double worst_a = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = tau * i / samples;
    worst_a = std::max(worst_a, max_norm(connection_matrix(f, t) -
                                         connection_closed_form(f, t)));
  }
  report.a_closed_form_residual = worst_a;
  report.commutation_residual = commutation_residual(f, m, grid_size);
  report.k22_integral = k22_cancellation(f, m);
  report.analytic_gate = analytic_gate(g);
  report.geometric_angle = geometric_angle(f, steps_per_segment);
  return report;
}

}  // namespace holosim
