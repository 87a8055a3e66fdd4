#pragma once

#include <string>
#include <vector>

#include "holosim/linalg.hpp"
#include "holosim/path.hpp"

namespace holosim {

// Time-indexed orthonormal auxiliary basis {nu_k(t)} with analytic
// derivatives. The first `computational_dim` vectors span the cyclic
// computational subspace; the last vector is the auxiliary (leaky) level.
class Frame {
 public:
  // Three levels (|0>, |1>, |e>): nu_1 is the dark state fixed by the axis
  // angles, nu_2 follows the path through the bright/excited pair, nu_3
  // completes the basis.
  static Frame one_qubit(double theta, double phi, PathSpec path);

  // Five levels (|00>, |01>, |10>, |11>, |ee>): |00> and |01> are static;
  // the remaining three vectors mirror the one-qubit frame on
  // (|10>, |11>, |ee>).
  static Frame two_qubit(double theta, double phi, PathSpec path);

  Eigen::Index dimension() const { return dimension_; }
  Eigen::Index computational_dim() const { return computational_dim_; }
  const std::vector<std::string>& level_labels() const { return labels_; }

  // Columns are nu_1(t) ... nu_N(t).
  Matrix basis_at(double t) const;
  // Columns are d/dt nu_k(t), from the analytic path derivatives.
  Matrix derivative_at(double t) const;

  StateVector state_at(double t, Eigen::Index k) const;

  // P(t) = sum_{k <= L} |nu_k(t)><nu_k(t)|.
  Matrix computational_projector(double t) const;

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  const PathSpec& path() const { return path_; }

 private:
  enum class Kind { kOneQubit, kTwoQubit };

  Frame(Kind kind, double theta, double phi, PathSpec path);

  Kind kind_;
  double theta_;
  double phi_;
  PathSpec path_;
  Eigen::Index dimension_;
  Eigen::Index computational_dim_;
  std::vector<std::string> labels_;
};

}  // namespace holosim
