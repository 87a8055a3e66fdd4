#include "holosim/linalg.hpp"

#include <cmath>

#include "holosim/errors.hpp"

namespace holosim {

void StateVector::require_normalized(double tol) const {
  const double n2 = amplitudes.squaredNorm();
  if (std::abs(n2 - 1.0) > tol) {
    throw ValidationError("state vector is not normalized: |psi|^2 = " +
                          std::to_string(n2));
  }
}

double max_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double hermiticity_residual(const Matrix& m) {
  return max_norm(m - m.adjoint().eval());
}

double unitarity_residual(const Matrix& m) {
  const Matrix gram = m.adjoint() * m;
  return max_norm(gram - Matrix::Identity(m.rows(), m.cols()));
}

bool is_hermitian(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return hermiticity_residual(m) <= tol * std::max(1.0, max_norm(m));
}

bool is_unitary(const Matrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return unitarity_residual(m) <= tol;
}

Matrix expm_generator(const Matrix& generator, double scale) {
  if (generator.rows() != generator.cols()) {
    throw ValidationError("expm_generator: generator must be square");
  }
  if (!is_hermitian(generator)) {
    throw NumericsError("expm_generator: generator is not Hermitian, residual " +
                        std::to_string(hermiticity_residual(generator)));
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(generator);
  if (solver.info() != Eigen::Success) {
    throw NumericsError("expm_generator: eigendecomposition failed");
  }
  const Eigen::VectorXd& eigenvalues = solver.eigenvalues();
  Vector phases(eigenvalues.size());
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    phases[i] = std::exp(-kImag * scale * eigenvalues[i]);
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

double phase_insensitive_overlap(const Matrix& u, const Matrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
    throw ValidationError("gate overlap: dimension mismatch");
  }
  return std::abs((u.adjoint() * v).trace()) / static_cast<double>(u.rows());
}

double gate_fidelity(const Matrix& u, const Matrix& v, double unitarity_tol) {
  if (u.rows() != v.rows() || u.cols() != v.cols() || u.rows() != u.cols()) {
    throw ValidationError("gate_fidelity: dimension mismatch");
  }
  if (!is_unitary(u, unitarity_tol) || !is_unitary(v, unitarity_tol)) {
    throw NumericsError("gate_fidelity: input is not unitary within tolerance");
  }
  return phase_insensitive_overlap(u, v);
}

double state_fidelity(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) {
    throw ValidationError("state_fidelity: dimension mismatch");
  }
  return std::norm(a.dot(b));  // Eigen's dot conjugates the left argument
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  a.require_normalized();
  b.require_normalized();
  return state_fidelity(a.amplitudes, b.amplitudes);
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << Complex(0, 0), Complex(0, -1), Complex(0, 1), Complex(0, 0);
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace holosim
