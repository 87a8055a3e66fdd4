#include "holosim/path.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <numbers>
#include <sstream>

#include "holosim/errors.hpp"
#include "holosim/quadrature.hpp"

namespace holosim {

namespace {

constexpr double kPi = std::numbers::pi;

double wrap_to_pi(double x) {
  x = std::fmod(x, 2.0 * kPi);
  if (x > kPi) x -= 2.0 * kPi;
  if (x <= -kPi) x += 2.0 * kPi;
  return x;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

PathSpec::PathSpec(std::vector<PathSegment> segments)
    : PathSpec(std::move(segments), true) {}

PathSpec PathSpec::unchecked(std::vector<PathSegment> segments) {
  return PathSpec(std::move(segments), false);
}

PathSpec::PathSpec(std::vector<PathSegment> segments, bool validate)
    : segments_(std::move(segments)) {
  if (segments_.empty()) {
    throw ValidationError("path: no segments");
  }
  for (const auto& s : segments_) {
    if (!(s.t_end > s.t_start)) {
      throw ValidationError("path: segment with non-positive duration");
    }
    if (!s.alpha || !s.beta || !s.alpha_dot || !s.beta_dot) {
      throw ValidationError("path: segment with missing evaluators");
    }
  }
  if (std::abs(segments_.front().t_start) > 1e-12) {
    throw ValidationError("path: first segment must start at t = 0");
  }
  period_ = segments_.back().t_end;
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    if (std::abs(segments_[i].t_end - segments_[i + 1].t_start) > 1e-12) {
      throw ValidationError("path: segments are not contiguous");
    }
    breakpoints_.push_back(segments_[i].t_end);
  }
  if (!validate) return;

  if (cyclicity_residual() > 1e-12) {
    throw ValidationError(
        "path: alpha(0) = alpha(tau) = 0 violated, residual " +
        std::to_string(cyclicity_residual()));
  }
  for (std::size_t i = 0; i + 1 < segments_.size(); ++i) {
    const double tj = segments_[i].t_end;
    const double a_left = segments_[i].alpha(tj);
    const double a_right = segments_[i + 1].alpha(tj);
    if (std::abs(a_left - a_right) > 1e-10) {
      throw ValidationError("path: alpha discontinuous at t = " +
                            std::to_string(tj));
    }
    const double b_left = segments_[i].beta(tj);
    const double b_right = segments_[i + 1].beta(tj);
    if (std::abs(wrap_to_pi(b_left - b_right)) > 1e-10) {
      throw ValidationError("path: beta discontinuous (mod 2*pi) at t = " +
                            std::to_string(tj));
    }
  }
  // Polar range check on a sampling grid.
  for (const auto& s : segments_) {
    const int n = 257;
    for (int k = 0; k <= n; ++k) {
      const double t = s.t_start + (s.t_end - s.t_start) * k / n;
      const double a = s.alpha(t);
      if (a < -1e-9 || a > kPi + 1e-9) {
        throw ValidationError("path: alpha outside [0, pi] at t = " +
                              std::to_string(t));
      }
    }
  }
}

PathPoint PathSpec::eval(double t) const {
  const double slack = 1e-12 * std::max(1.0, period_);
  if (t < -slack || t > period_ + slack) {
    throw ValidationError("path: t = " + std::to_string(t) +
                          " outside [0, " + std::to_string(period_) + "]");
  }
  t = std::clamp(t, 0.0, period_);

  // Segments own (t_start, t_end]; the first also owns t = 0. This reports
  // the left segment's derivative at a junction.
  std::size_t idx = 0;
  while (idx + 1 < segments_.size() && t > segments_[idx].t_end) ++idx;

  const PathSegment& s = segments_[idx];
  PathPoint p;
  p.alpha = s.alpha(t);
  p.beta = s.beta(t);
  p.alpha_dot = s.alpha_dot(t);
  p.beta_dot = s.beta_dot(t);
  for (double bp : breakpoints_) {
    if (std::abs(t - bp) <= slack) {
      p.at_breakpoint = true;
      break;
    }
  }
  return p;
}

double PathSpec::cyclicity_residual() const {
  const double a0 = segments_.front().alpha(0.0);
  const double a1 = segments_.back().alpha(period_);
  return std::max(std::abs(a0), std::abs(a1));
}

double PathSpec::beta_wrap_defect() const {
  const double b0 = segments_.front().beta(0.0);
  const double b1 = segments_.back().beta(period_);
  return wrap_to_pi(b1 - b0);
}

void GateSpec::validate() const {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw ValidationError("gate: theta must lie in [0, pi]");
  }
  if (!(phi >= 0.0 && phi < 2.0 * kPi)) {
    throw ValidationError("gate: phi must lie in [0, 2*pi)");
  }
  if (!(phi_tau >= 0.0 && phi_tau < 2.0 * kPi)) {
    throw ValidationError("gate: phi_tau must lie in [0, 2*pi)");
  }
}

PathSpec make_fig1_path(double alpha0, double tau1, double tau2, double tau) {
  if (!(alpha0 > 0.0 && alpha0 <= kPi)) {
    throw ValidationError("fig1 path: alpha0 must lie in (0, pi]");
  }
  if (!(0.0 < tau1 && tau1 < tau2 && tau2 < tau)) {
    throw ValidationError("fig1 path: need 0 < tau1 < tau2 < tau");
  }

  const double w1 = kPi / (2.0 * tau1);        // ramp-up rate
  const double w3 = kPi / (2.0 * (tau - tau2));  // ramp-down rate
  const double wb = 2.0 * kPi / (tau2 - tau1);   // azimuthal sweep rate

  std::vector<PathSegment> segs(3);
  segs[0] = {0.0, tau1,
             [=](double t) { return alpha0 * std::sin(w1 * t); },
             [](double) { return 0.0; },
             [=](double t) { return alpha0 * w1 * std::cos(w1 * t); },
             [](double) { return 0.0; }};
  segs[1] = {tau1, tau2,
             [=](double) { return alpha0; },
             [=](double t) { return wb * (t - tau1); },
             [](double) { return 0.0; },
             [=](double) { return wb; }};
  segs[2] = {tau2, tau,
             [=](double t) { return alpha0 * std::sin(w3 * (tau - t)); },
             [](double) { return 0.0; },
             [=](double t) { return -alpha0 * w3 * std::cos(w3 * (tau - t)); },
             [](double) { return 0.0; }};
  return PathSpec(std::move(segs));
}

PathSpec make_hadamard_path(double tau1, double tau2, double tau) {
  return make_fig1_path(kPi / 2.0, tau1, tau2, tau);
}

namespace {

// Cubic Hermite interpolant with node slopes from central differences,
// limited to keep the curve within the local data range.
class MonotoneCubic {
 public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> t, std::vector<double> y)
      : t_(std::move(t)), y_(std::move(y)) {
    const std::size_t n = t_.size();
    slopes_.assign(n, 0.0);
    if (n < 2) return;
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      secant[i] = (y_[i + 1] - y_[i]) / (t_[i + 1] - t_[i]);
    }
    slopes_[0] = secant.front();
    slopes_[n - 1] = secant.back();
    for (std::size_t i = 1; i + 1 < n; ++i) {
      slopes_[i] = (y_[i + 1] - y_[i - 1]) / (t_[i + 1] - t_[i - 1]);
      // Fritsch-Carlson limiting: flatten at local extrema, cap elsewhere.
      if (secant[i - 1] * secant[i] <= 0.0) {
        slopes_[i] = 0.0;
      } else {
        const double bound =
            3.0 * std::min(std::abs(secant[i - 1]), std::abs(secant[i]));
        slopes_[i] = std::clamp(slopes_[i], -bound, bound);
      }
    }
  }

  double value(double t) const {
    const auto [i, u, h] = locate(t);
    const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
    const double h10 = u * (1 - u) * (1 - u);
    const double h01 = u * u * (3 - 2 * u);
    const double h11 = u * u * (u - 1);
    return h00 * y_[i] + h10 * h * slopes_[i] + h01 * y_[i + 1] +
           h11 * h * slopes_[i + 1];
  }

  double derivative(double t) const {
    const auto [i, u, h] = locate(t);
    const double d00 = 6 * u * (u - 1);
    const double d10 = (1 - u) * (1 - 3 * u);
    const double d01 = -d00;
    const double d11 = u * (3 * u - 2);
    return (d00 * y_[i] + d01 * y_[i + 1]) / h + d10 * slopes_[i] +
           d11 * slopes_[i + 1];
  }

 private:
  struct Cell {
    std::size_t i;
    double u;
    double h;
  };

  Cell locate(double t) const {
    std::size_t lo = 0;
    std::size_t hi = t_.size() - 1;
    t = std::clamp(t, t_.front(), t_.back());
    while (hi - lo > 1) {
      const std::size_t mid = (lo + hi) / 2;
      (t_[mid] <= t ? lo : hi) = mid;
    }
    const double h = t_[lo + 1] - t_[lo];
    return {lo, (t - t_[lo]) / h, h};
  }

  std::vector<double> t_;
  std::vector<double> y_;
  std::vector<double> slopes_;
};

}  // namespace

PathSpec path_from_samples(const std::vector<double>& t,
                           const std::vector<double>& alpha,
                           const std::vector<double>& beta, bool validate) {
  if (t.size() < 4) {
    throw ValidationError("custom path: need at least 4 samples");
  }
  if (t.size() != alpha.size() || t.size() != beta.size()) {
    throw ValidationError("custom path: column lengths differ");
  }
  if (std::abs(t.front()) > 1e-12) {
    throw ValidationError("custom path: t must start at 0");
  }
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (!(t[i + 1] > t[i])) {
      throw ValidationError("custom path: t must be strictly increasing");
    }
  }

  auto alpha_interp = std::make_shared<MonotoneCubic>(t, alpha);
  auto beta_interp = std::make_shared<MonotoneCubic>(t, beta);
  PathSegment seg;
  seg.t_start = 0.0;
  seg.t_end = t.back();
  seg.alpha = [alpha_interp](double x) { return alpha_interp->value(x); };
  seg.beta = [beta_interp](double x) { return beta_interp->value(x); };
  seg.alpha_dot = [alpha_interp](double x) {
    return alpha_interp->derivative(x);
  };
  seg.beta_dot = [beta_interp](double x) { return beta_interp->derivative(x); };
  std::vector<PathSegment> segs{std::move(seg)};
  return validate ? PathSpec(std::move(segs)) : PathSpec::unchecked(std::move(segs));
}

PathSpec load_path_csv(const std::string& filename, bool validate) {
  std::ifstream in(filename);
  if (!in) {
    throw ValidationError("custom path: cannot open " + filename);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw ValidationError("custom path: empty file " + filename);
  }
  if (trim(line) != "t,alpha,beta") {
    throw ValidationError("custom path: expected header `t,alpha,beta` in " +
                          filename);
  }
  std::vector<double> t, a, b;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::istringstream row(line);
    std::string cell;
    double values[3];
    for (int i = 0; i < 3; ++i) {
      if (!std::getline(row, cell, ',')) {
        throw ValidationError("custom path: short row at line " +
                              std::to_string(line_no));
      }
      try {
        values[i] = std::stod(trim(cell));
      } catch (const std::exception&) {
        throw ValidationError("custom path: bad number at line " +
                              std::to_string(line_no));
      }
    }
    t.push_back(values[0]);
    a.push_back(values[1]);
    b.push_back(values[2]);
  }
  return path_from_samples(t, a, b, validate);
}

double solid_angle(const PathSpec& p, double abs_tol) {
  double total = 0.0;
  for (const auto& s : p.segments()) {
    total += adaptive_simpson(
        [&s](double t) { return (1.0 - std::cos(s.alpha(t))) * s.beta_dot(t); },
        s.t_start, s.t_end, abs_tol);
  }
  return 0.5 * total;
}

}  // namespace holosim
