#pragma once

#include <functional>
#include <string>
#include <vector>

namespace holosim {

// Closed parameter-sphere path (alpha(t), beta(t)): alpha is the polar
// angle in [0, pi], beta the azimuthal angle. alpha(0) = alpha(tau) = 0.
struct PathPoint {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_dot = 0.0;
  double beta_dot = 0.0;
  // True when t coincides with a segment junction; the derivative reported
  // is the left segment's.
  bool at_breakpoint = false;
};

struct PathSegment {
  double t_start = 0.0;
  double t_end = 0.0;
  std::function<double(double)> alpha;
  std::function<double(double)> beta;
  std::function<double(double)> alpha_dot;
  std::function<double(double)> beta_dot;
};

class PathSpec {
 public:
  // Validates cyclicity (alpha(0) = alpha(tau) = 0 within 1e-12), continuity
  // of alpha and of beta mod 2*pi across junctions (1e-10), and the polar
  // range alpha in [0, pi] on a sampling grid. Throws ValidationError.
  explicit PathSpec(std::vector<PathSegment> segments);

  // Construction without invariant checks, for diagnostic injection.
  static PathSpec unchecked(std::vector<PathSegment> segments);

  PathPoint eval(double t) const;

  double period() const { return period_; }
  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<PathSegment>& segments() const { return segments_; }

  // Residual of the cyclicity condition, max(|alpha(0)|, |alpha(tau)|).
  double cyclicity_residual() const;
  // Net azimuthal advance beta(tau) - beta(0), wrapped to (-pi, pi]; the
  // closed-loop condition on beta holds modulo 2*pi.
  double beta_wrap_defect() const;

 private:
  PathSpec(std::vector<PathSegment> segments, bool validate);

  std::vector<PathSegment> segments_;
  std::vector<double> breakpoints_;
  double period_ = 0.0;
};

// Rotation-gate parameters: axis angles (theta, phi) and rotation angle
// phi_tau, all in radians.
struct GateSpec {
  double theta = 0.0;
  double phi = 0.0;
  double phi_tau = 0.0;

  void validate() const;  // theta in [0, pi], phi and phi_tau in [0, 2*pi)
};

// Three-segment loop: a sinusoidal polar ramp 0 -> alpha0 at beta = 0, a
// full 2*pi azimuthal sweep at fixed alpha0, and the mirrored ramp back to
// the pole. The sinusoidal ramp makes alpha_dot vanish at the junctions.
PathSpec make_fig1_path(double alpha0, double tau1, double tau2, double tau);

// The alpha0 = pi/2 loop with the published ramp formulas; encloses solid
// angle 2*pi, i.e. rotation angle pi.
PathSpec make_hadamard_path(double tau1, double tau2, double tau);

// Custom path from a CSV table with header `t,alpha,beta` and strictly
// increasing t from 0 to tau. Samples are interpolated with a monotone
// cubic; derivatives come from the interpolant (node slopes by central
// differences). With validate = false the path invariants are not enforced,
// so diagnostic commands can measure how badly they fail.
PathSpec load_path_csv(const std::string& filename, bool validate = true);
PathSpec path_from_samples(const std::vector<double>& t,
                           const std::vector<double>& alpha,
                           const std::vector<double>& beta,
                           bool validate = true);

// Half the oriented solid angle enclosed by the path:
// (1/2) * integral of (1 - cos alpha) * beta_dot dt over the loop.
double solid_angle(const PathSpec& p, double abs_tol = 1e-12);

}  // namespace holosim
