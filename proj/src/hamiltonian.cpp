#include "holosim/hamiltonian.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "holosim/errors.hpp"
#include "holosim/quadrature.hpp"

namespace holosim {

namespace {

constexpr double kPoleGuard = 1e-6;  // alpha below this counts as the pole

}  // namespace

std::string to_string(K22Choice c) {
  switch (c) {
    case K22Choice::kZero:
      return "k22_zero";
    case K22Choice::kNegBetaDot:
      return "k22_negbeta";
    case K22Choice::kCustom:
      return "custom";
  }
  return "unknown";
}

void ErrorModel::validate() const {
  if (!(std::abs(epsilon) < 1.0)) {
    throw ValidationError("error model: |epsilon| must be < 1");
  }
}

LambdaModel LambdaModel::from_functions(double theta, double phi,
                                        DeltaFn delta, EnvelopeFn envelope,
                                        double period,
                                        std::vector<double> breakpoints,
                                        K22Choice choice) {
  if (!(period > 0.0)) {
    throw ValidationError("model: period must be positive");
  }
  LambdaModel m;
  m.theta_ = theta;
  m.phi_ = phi;
  m.choice_ = choice;
  m.delta_fn_ = std::move(delta);
  m.envelope_fn_ = std::move(envelope);
  m.period_ = period;
  m.breakpoints_ = std::move(breakpoints);
  return m;
}

LambdaModel::Sample LambdaModel::sample(double t) const {
  Sample s;
  s.delta = scale_ * delta_fn_(t);
  s.envelope = scale_ * envelope_fn_(t);
  s.omega = std::abs(s.envelope);
  s.kappa = s.omega > 0.0 ? std::arg(s.envelope) : 0.0;
  if (!std::isfinite(s.delta) || !std::isfinite(s.omega)) {
    throw SingularityError("model: non-finite drive parameters", t);
  }
  return s;
}

Matrix LambdaModel::assemble(double t) const {
  const Sample s = sample(t);
  const Complex drive_b = s.envelope;  // coefficient of |e><b|
  const Complex on_0 = drive_b * std::sin(0.5 * theta_) * std::exp(kImag * phi_);
  const Complex on_1 = -drive_b * std::cos(0.5 * theta_);

  Matrix h = Matrix::Zero(3, 3);
  h(2, 0) = on_0;
  h(2, 1) = on_1;
  h(0, 2) = std::conj(on_0);
  h(1, 2) = std::conj(on_1);
  h(2, 2) = s.delta;
  return h;
}

Matrix LambdaModel::assemble_two_qubit(double t) const {
  Matrix h = Matrix::Zero(5, 5);
  h.block<3, 3>(2, 2) = assemble(t);
  return h;
}

std::pair<Complex, Complex> LambdaModel::physical_drives(double t) const {
  const Sample s = sample(t);
  return {s.envelope * std::sin(0.5 * theta_) * std::exp(kImag * phi_),
          -s.envelope * std::cos(0.5 * theta_)};
}

double LambdaModel::gamma_rate(double t) const {
  const PathSpec& p = path();
  const PathPoint pt = p.eval(t);
  const Sample s = sample(t);
  // Re(envelope * e^{-i beta}) recovers (alpha_dot/2) * cot(kappa - beta)
  // without evaluating the indeterminate quotient.
  const double in_phase =
      (s.envelope * std::exp(-kImag * pt.beta)).real() / scale_;
  if (std::abs(in_phase) < 1e-14) {
    return pt.beta_dot;
  }
  if (pt.alpha < kPoleGuard) {
    throw SingularityError("gamma rate: cot(alpha/2) divergence", t);
  }
  return pt.beta_dot + in_phase / std::tan(0.5 * pt.alpha);
}

const PathSpec& LambdaModel::path() const {
  if (!path_) {
    throw ValidationError("model: no underlying path");
  }
  return *path_;
}

LambdaModel LambdaModel::scaled(double factor) const {
  LambdaModel out = *this;
  out.scale_ *= factor;
  return out;
}

LambdaModel model_k22_zero(double theta, double phi, PathSpec path) {
  auto shared = std::make_shared<PathSpec>(path);
  LambdaModel m;
  m.theta_ = theta;
  m.phi_ = phi;
  m.choice_ = K22Choice::kZero;
  m.period_ = shared->period();
  m.breakpoints_ = shared->breakpoints();
  m.path_ = std::move(path);
  m.delta_fn_ = [shared](double t) {
    const PathPoint p = shared->eval(t);
    return -p.beta_dot * (1.0 + std::cos(p.alpha));
  };
  m.envelope_fn_ = [shared](double t) {
    const PathPoint p = shared->eval(t);
    return 0.5 * (kImag * p.alpha_dot + p.beta_dot * std::sin(p.alpha)) *
           std::exp(kImag * p.beta);
  };
  return m;
}

LambdaModel model_k22_negbeta(double theta, double phi, PathSpec path) {
  auto shared = std::make_shared<PathSpec>(path);
  LambdaModel m;
  m.theta_ = theta;
  m.phi_ = phi;
  m.choice_ = K22Choice::kNegBetaDot;
  m.period_ = shared->period();
  m.breakpoints_ = shared->breakpoints();
  m.path_ = std::move(path);
  m.delta_fn_ = [shared](double t) {
    const PathPoint p = shared->eval(t);
    if (std::abs(p.beta_dot) < 1e-12) return 0.0;
    if (p.alpha < kPoleGuard) {
      throw SingularityError(
          "k22_negbeta family: cot(alpha/2) divergence at the pole", t);
    }
    const double cot_half = 1.0 / std::tan(0.5 * p.alpha);
    return p.beta_dot * (std::cos(p.alpha) * cot_half * cot_half - 1.0);
  };
  m.envelope_fn_ = [shared](double t) -> Complex {
    const PathPoint p = shared->eval(t);
    Complex transverse{0.0, 0.5 * p.alpha_dot};
    if (std::abs(p.beta_dot) >= 1e-12) {
      if (p.alpha < kPoleGuard) {
        throw SingularityError(
            "k22_negbeta family: cot(alpha/2) divergence at the pole", t);
      }
      const double c = std::cos(0.5 * p.alpha);
      transverse -= p.beta_dot * (c * c * c / std::sin(0.5 * p.alpha));
    }
    return transverse * std::exp(kImag * p.beta);
  };
  return m;
}

LambdaModel solve_parameters(double theta, double phi, PathSpec path,
                             std::function<double(double)> kappa) {
  auto shared = std::make_shared<PathSpec>(path);
  auto kappa_fn = std::make_shared<std::function<double(double)>>(std::move(kappa));

  auto cot_detuning_phase = [shared, kappa_fn](double t) -> double {
    const PathPoint p = shared->eval(t);
    const double d = (*kappa_fn)(t) - p.beta;
    const double sd = std::sin(d);
    if (std::abs(sd) < 1e-9) {
      if (std::abs(p.alpha_dot) < 1e-12) {
        throw NumericsError(
            "parameter relations are indeterminate (alpha_dot = 0 with "
            "kappa = beta at t = " +
            std::to_string(t) +
            "); use an explicit family (k22_zero or k22_negbeta)");
      }
      throw SingularityError(
          "parameter relations: cot(kappa - beta) divergence", t);
    }
    return std::cos(d) / sd;
  };

  LambdaModel m;
  m.theta_ = theta;
  m.phi_ = phi;
  m.choice_ = K22Choice::kCustom;
  m.period_ = shared->period();
  m.breakpoints_ = shared->breakpoints();
  m.path_ = std::move(path);
  m.delta_fn_ = [shared, cot_detuning_phase](double t) {
    const PathPoint p = shared->eval(t);
    if (std::abs(p.alpha_dot) < 1e-12) {
      // cot(kappa - beta) may be anything regular; the product vanishes.
      cot_detuning_phase(t);  // still reject the indeterminate combination
      return -p.beta_dot;
    }
    const double cot_d = cot_detuning_phase(t);
    const double sa = std::sin(p.alpha);
    if (std::abs(sa) < 1e-9 && std::abs(p.alpha_dot * cot_d) > 1e-12) {
      throw SingularityError("parameter relations: cot(alpha) divergence", t);
    }
    return -p.alpha_dot * (std::cos(p.alpha) / sa) * cot_d - p.beta_dot;
  };
  m.envelope_fn_ = [shared, cot_detuning_phase](double t) -> Complex {
    const PathPoint p = shared->eval(t);
    if (std::abs(p.alpha_dot) < 1e-12) {
      cot_detuning_phase(t);
      return Complex{0.0, 0.0};
    }
    const double cot_d = cot_detuning_phase(t);
    return 0.5 * (kImag * p.alpha_dot + p.alpha_dot * cot_d) *
           std::exp(kImag * p.beta);
  };
  return m;
}

LambdaModel model_custom_k22(double theta, double phi, PathSpec path,
                             std::function<double(double)> k22) {
  auto shared = std::make_shared<PathSpec>(path);
  auto target = std::make_shared<std::function<double(double)>>(std::move(k22));

  // The diagonal target enters only through k22 + beta_dot*sin^2(alpha/2).
  auto lifted = [shared, target](double t) -> double {
    const PathPoint p = shared->eval(t);
    const double value = (*target)(t);
    if (!std::isfinite(value)) {
      throw SingularityError("custom k22: target is not finite", t);
    }
    const double s = std::sin(0.5 * p.alpha);
    return value + p.beta_dot * s * s;
  };

  LambdaModel m;
  m.theta_ = theta;
  m.phi_ = phi;
  m.choice_ = K22Choice::kCustom;
  m.period_ = shared->period();
  m.breakpoints_ = shared->breakpoints();
  m.delta_fn_ = [shared, lifted](double t) {
    const PathPoint p = shared->eval(t);
    const double num = lifted(t);
    if (std::abs(num) < 1e-14) return -p.beta_dot;
    if (p.alpha < kPoleGuard) {
      throw SingularityError("custom k22: 1/sin^2(alpha/2) divergence", t);
    }
    const double s = std::sin(0.5 * p.alpha);
    return -num * std::cos(p.alpha) / (s * s) - p.beta_dot;
  };
  m.envelope_fn_ = [shared, lifted](double t) -> Complex {
    const PathPoint p = shared->eval(t);
    const double num = lifted(t);
    Complex transverse{0.0, 0.5 * p.alpha_dot};
    if (std::abs(num) >= 1e-14) {
      if (p.alpha < kPoleGuard) {
        throw SingularityError("custom k22: cot(alpha/2) divergence", t);
      }
      transverse += num / std::tan(0.5 * p.alpha);
    }
    return transverse * std::exp(kImag * p.beta);
  };

  // Cancellation is a construction requirement for this entry point.
  const double integral = integrate_segmented(
      [&target](double t) { return (*target)(t); }, 0.0, m.period_,
      m.breakpoints_, 1e-12);
  if (std::abs(integral) > 1e-8) {
    throw ValidationError(
        "custom k22: target must integrate to zero over the loop, got " +
        std::to_string(integral));
  }
  m.path_ = std::move(path);
  return m;
}

double pulse_area(const LambdaModel& m, double abs_tol) {
  return integrate_segmented([&m](double t) { return m.sample(t).omega; }, 0.0,
                             m.period(), m.breakpoints(), abs_tol);
}

LambdaModel apply_error(const LambdaModel& m, const ErrorModel& e) {
  e.validate();
  return m.scaled(1.0 + e.epsilon);
}

}  // namespace holosim
