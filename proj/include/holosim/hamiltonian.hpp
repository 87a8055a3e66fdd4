#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "holosim/linalg.hpp"
#include "holosim/path.hpp"

namespace holosim {

// Which dynamical-matrix diagonal the drive parameters were solved for.
enum class K22Choice { kZero, kNegBetaDot, kCustom };

std::string to_string(K22Choice c);

// Dimensionless multiplicative miscalibration of detuning and drive
// amplitude.
struct ErrorModel {
  double epsilon = 0.0;

  void validate() const;  // |epsilon| < 1
};

// Driving-Hamiltonian description for the three-level scheme: detuning
// delta(t), non-negative envelope omega(t), drive phase kappa(t), and the
// bright-state axis angles (theta, phi). The same parameters drive the
// five-level two-qubit scheme on its (|10>, |11>, |ee>) block.
class LambdaModel {
 public:
  struct Sample {
    double delta = 0.0;
    double omega = 0.0;   // |envelope|
    double kappa = 0.0;   // arg(envelope)
    Complex envelope{};   // omega * exp(i * kappa)
  };

  using DeltaFn = std::function<double(double)>;
  using EnvelopeFn = std::function<Complex(double)>;

  // Raw constructor for synthetic drives (tests, benchmarks). Breakpoints
  // split the integration/stepping intervals.
  static LambdaModel from_functions(double theta, double phi, DeltaFn delta,
                                    EnvelopeFn envelope, double period,
                                    std::vector<double> breakpoints = {},
                                    K22Choice choice = K22Choice::kCustom);

  Sample sample(double t) const;

  // 3x3 Hermitian drive matrix over (|0>, |1>, |e>).
  Matrix assemble(double t) const;
  // 5x5 Hermitian drive matrix over (|00>, |01>, |10>, |11>, |ee>); acts on
  // the (|10>, |11>, |ee>) block, leaving |00> and |01> decoupled.
  Matrix assemble_two_qubit(double t) const;

  // Rabi envelopes of the two physical drives, on |e><0| and |e><1|.
  std::pair<Complex, Complex> physical_drives(double t) const;

  // Phase rate of the auxiliary level relative to its Schrodinger solution;
  // diagnostic only. Requires a path-backed model.
  double gamma_rate(double t) const;

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  K22Choice k22_choice() const { return choice_; }
  double period() const { return period_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  bool has_path() const { return path_.has_value(); }
  const PathSpec& path() const;
  double scale() const { return scale_; }

  LambdaModel scaled(double factor) const;

 private:
  LambdaModel() = default;

  double theta_ = 0.0;
  double phi_ = 0.0;
  K22Choice choice_ = K22Choice::kCustom;
  DeltaFn delta_fn_;
  EnvelopeFn envelope_fn_;
  double period_ = 0.0;
  std::vector<double> breakpoints_;
  std::optional<PathSpec> path_;
  double scale_ = 1.0;

  friend LambdaModel model_k22_zero(double, double, PathSpec);
  friend LambdaModel model_k22_negbeta(double, double, PathSpec);
  friend LambdaModel solve_parameters(double, double, PathSpec,
                                      std::function<double(double)>);
  friend LambdaModel model_custom_k22(double, double, PathSpec,
                                      std::function<double(double)>);
};

// Drive family with vanishing dynamical-matrix diagonal:
//   delta = -beta_dot * (1 + cos alpha),
//   envelope = (i*alpha_dot + beta_dot*sin alpha)/2 * exp(i*beta).
// Regular for alpha in [0, pi].
LambdaModel model_k22_zero(double theta, double phi, PathSpec path);

// Drive family with dynamical diagonal -beta_dot:
//   delta = beta_dot * (cos alpha * cot^2(alpha/2) - 1),
//   envelope = (i*alpha_dot - 2*beta_dot*cot(alpha/2)*cos^2(alpha/2))/2
//              * exp(i*beta).
// Singular where alpha -> 0 with beta_dot != 0; requires the azimuth to
// close modulo 2*pi for dynamical-phase cancellation (checked downstream).
LambdaModel model_k22_negbeta(double theta, double phi, PathSpec path);

// General parameter relations for a prescribed drive phase kappa(t):
//   delta = -alpha_dot*cot(alpha)*cot(kappa-beta) - beta_dot,
//   envelope = (i*alpha_dot + alpha_dot*cot(kappa-beta))/2 * exp(i*beta).
// Throws NumericsError on the indeterminate combination alpha_dot = 0 with
// kappa = beta (use an explicit family there) and SingularityError where a
// cotangent blows up against a nonzero coefficient.
LambdaModel solve_parameters(double theta, double phi, PathSpec path,
                             std::function<double(double)> kappa);

// Drive family realizing a prescribed dynamical diagonal k22(t):
//   delta = -(k22 + beta_dot*sin^2(alpha/2)) * cos(alpha)/sin^2(alpha/2)
//           - beta_dot,
//   envelope = (i*alpha_dot/2
//               + (k22 + beta_dot*sin^2(alpha/2)) * cot(alpha/2))
//              * exp(i*beta).
// The target must be finite and integrate to zero over the loop.
LambdaModel model_custom_k22(double theta, double phi, PathSpec path,
                             std::function<double(double)> k22);

// Integrated envelope magnitude over one period, split at breakpoints.
double pulse_area(const LambdaModel& m, double abs_tol = 1e-12);

// New model with delta and omega scaled by (1 + epsilon); kappa unchanged.
LambdaModel apply_error(const LambdaModel& m, const ErrorModel& e);

}  // namespace holosim
