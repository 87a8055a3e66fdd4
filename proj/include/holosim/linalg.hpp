#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace holosim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr Complex kImag{0.0, 1.0};

// Complex amplitude vector over an ordered level basis. Amplitudes are
// dimensionless; labels identify the levels for reports and file output.
struct StateVector {
  Vector amplitudes;
  std::vector<std::string> basis_labels;

  Eigen::Index dimension() const { return amplitudes.size(); }
  double norm() const { return amplitudes.norm(); }

  // Throws ValidationError unless the amplitudes are unit-norm within tol.
  void require_normalized(double tol = 1e-12) const;
};

// Complex square matrix over an ordered level basis. Entries are
// dimensionless unless documented as angular frequency.
struct Operator {
  Matrix entries;
  std::vector<std::string> basis_labels;

  Eigen::Index dimension() const { return entries.rows(); }
};

// Largest absolute entry; the default matrix residual norm throughout.
double max_norm(const Matrix& m);

double hermiticity_residual(const Matrix& m);
double unitarity_residual(const Matrix& m);
bool is_hermitian(const Matrix& m, double tol = 1e-12);
bool is_unitary(const Matrix& m, double tol = 1e-10);

// exp(-i * scale * generator) for a Hermitian generator, computed by
// eigendecomposition. Throws ValidationError for non-square input and
// NumericsError when the generator is not Hermitian within tolerance.
Matrix expm_generator(const Matrix& generator, double scale);

// |tr(U^dag V)| / d. Insensitive to a global phase on either argument.
// Both inputs must be unitary within unitarity_tol and share a dimension.
double gate_fidelity(const Matrix& u, const Matrix& v,
                     double unitarity_tol = 1e-10);

// Same quantity without the unitarity requirement, for nearly-unitary
// blocks extracted from a larger evolution.
double phase_insensitive_overlap(const Matrix& u, const Matrix& v);

// |<a|b>|^2 for normalized states of equal dimension.
double state_fidelity(const Vector& a, const Vector& b);
double state_fidelity(const StateVector& a, const StateVector& b);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

}  // namespace holosim
