#include "holosim/frame.hpp"

#include <cmath>

#include "holosim/errors.hpp"

namespace holosim {

namespace {

struct LambdaColumns {
  // Columns of the three-vector block (dark, path follower, auxiliary) in a
  // basis (lower0, lower1, excited), plus their time derivatives.
  Eigen::Matrix3cd basis;
  Eigen::Matrix3cd derivative;
};

LambdaColumns lambda_block(double theta, double phi, const PathPoint& p) {
  const double ca = std::cos(0.5 * p.alpha);
  const double sa = std::sin(0.5 * p.alpha);
  const Complex eib = std::exp(kImag * p.beta);
  const Complex emib = std::conj(eib);
  const double half_ad = 0.5 * p.alpha_dot;

  Eigen::Vector3cd dark;
  dark << std::cos(0.5 * theta), std::sin(0.5 * theta) * std::exp(kImag * phi),
      0.0;
  Eigen::Vector3cd bright;
  bright << std::sin(0.5 * theta) * std::exp(-kImag * phi),
      -std::cos(0.5 * theta), 0.0;
  Eigen::Vector3cd excited;
  excited << 0.0, 0.0, 1.0;

  LambdaColumns out;
  out.basis.col(0) = dark;
  out.basis.col(1) = ca * bright + sa * eib * excited;
  out.basis.col(2) = sa * emib * bright - ca * excited;

  out.derivative.col(0).setZero();
  out.derivative.col(1) =
      -half_ad * sa * bright +
      (half_ad * ca + kImag * p.beta_dot * sa) * eib * excited;
  out.derivative.col(2) =
      (half_ad * ca - kImag * p.beta_dot * sa) * emib * bright +
      half_ad * sa * excited;
  return out;
}

}  // namespace

Frame::Frame(Kind kind, double theta, double phi, PathSpec path)
    : kind_(kind), theta_(theta), phi_(phi), path_(std::move(path)) {
  if (kind_ == Kind::kOneQubit) {
    dimension_ = 3;
    computational_dim_ = 2;
    labels_ = {"0", "1", "e"};
  } else {
    dimension_ = 5;
    computational_dim_ = 4;
    labels_ = {"00", "01", "10", "11", "ee"};
  }
}

Frame Frame::one_qubit(double theta, double phi, PathSpec path) {
  return Frame(Kind::kOneQubit, theta, phi, std::move(path));
}

Frame Frame::two_qubit(double theta, double phi, PathSpec path) {
  return Frame(Kind::kTwoQubit, theta, phi, std::move(path));
}

Matrix Frame::basis_at(double t) const {
  const LambdaColumns cols = lambda_block(theta_, phi_, path_.eval(t));
  if (kind_ == Kind::kOneQubit) {
    return cols.basis;
  }
  Matrix basis = Matrix::Zero(5, 5);
  basis(0, 0) = 1.0;
  basis(1, 1) = 1.0;
  basis.block<3, 3>(2, 2) = cols.basis;
  return basis;
}

Matrix Frame::derivative_at(double t) const {
  const LambdaColumns cols = lambda_block(theta_, phi_, path_.eval(t));
  if (kind_ == Kind::kOneQubit) {
    return cols.derivative;
  }
  Matrix deriv = Matrix::Zero(5, 5);
  deriv.block<3, 3>(2, 2) = cols.derivative;
  return deriv;
}

StateVector Frame::state_at(double t, Eigen::Index k) const {
  if (k < 0 || k >= dimension_) {
    throw ValidationError("frame: basis index out of range");
  }
  return StateVector{basis_at(t).col(k), labels_};
}

Matrix Frame::computational_projector(double t) const {
  const Matrix basis = basis_at(t);
  const auto block = basis.leftCols(computational_dim_);
  return block * block.adjoint();
}

}  // namespace holosim
