#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>

#include "holosim/errors.hpp"
#include "holosim/path.hpp"

using namespace holosim;

namespace {

constexpr double kPi = std::numbers::pi;

// Test-local quadrature oracle: midpoint Riemann sum of
// (1/2) * (1 - cos alpha) * beta_dot, independent of the library quadrature.
double solid_angle_riemann(const PathSpec& p, int steps_per_segment) {
  double total = 0.0;
  for (const auto& s : p.segments()) {
    const double dt = (s.t_end - s.t_start) / steps_per_segment;
    for (int k = 0; k < steps_per_segment; ++k) {
      const double t = s.t_start + (k + 0.5) * dt;
      total += (1.0 - std::cos(s.alpha(t))) * s.beta_dot(t) * dt;
    }
  }
  return 0.5 * total;
}

PathSpec degenerate_pole_path() {
  // alpha pinned at the north pole while beta sweeps a full turn
  PathSegment seg;
  seg.t_start = 0.0;
  seg.t_end = 1.0;
  seg.alpha = [](double) { return 0.0; };
  seg.beta = [](double t) { return 2.0 * kPi * t; };
  seg.alpha_dot = [](double) { return 0.0; };
  seg.beta_dot = [](double) { return 2.0 * kPi; };
  return PathSpec({seg});
}

}  // namespace

TEST_CASE("three-segment loop endpoints and plateau") {
  const double alpha0 = 2.0 * kPi / 3.0;
  const PathSpec p = make_fig1_path(alpha0, 0.25, 0.75, 1.0);

  const PathPoint start = p.eval(0.0);
  CHECK(start.alpha == doctest::Approx(0.0));
  CHECK(start.beta == doctest::Approx(0.0));

  for (double t : {0.3, 0.5, 0.7, 0.75}) {
    CHECK(p.eval(t).alpha == doctest::Approx(alpha0).epsilon(1e-14));
  }
  CHECK(p.eval(1.0).alpha == doctest::Approx(0.0).epsilon(1e-12));

  // linear azimuthal sweep: halfway through the plateau beta = pi
  const PathPoint mid = make_fig1_path(kPi / 2.0, 0.25, 0.75, 1.0).eval(0.5);
  CHECK(mid.alpha == doctest::Approx(kPi / 2.0));
  CHECK(mid.beta == doctest::Approx(kPi).epsilon(1e-14));
}

TEST_CASE("hadamard ramp values") {
  const PathSpec p = make_hadamard_path(0.25, 0.75, 1.0);
  // alpha(tau1/2) = (pi/2) * sin(pi/4) = pi * sqrt(2) / 4
  CHECK(p.eval(0.125).alpha ==
        doctest::Approx(kPi * std::sqrt(2.0) / 4.0).epsilon(1e-14));
  CHECK(p.eval(0.25).alpha == doctest::Approx(kPi / 2.0).epsilon(1e-14));
  CHECK(p.eval(1.0).alpha == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("breakpoints are flagged and report the left derivative") {
  const PathSpec p = make_fig1_path(1.0, 0.25, 0.75, 1.0);
  const PathPoint junction = p.eval(0.25);
  CHECK(junction.at_breakpoint);
  CHECK(junction.beta_dot == doctest::Approx(0.0));  // left segment's rate
  CHECK_FALSE(p.eval(0.2).at_breakpoint);
  const PathPoint second = p.eval(0.26);
  CHECK(second.beta_dot == doctest::Approx(4.0 * kPi).epsilon(1e-14));
}

TEST_CASE("evaluation outside the period is rejected") {
  const PathSpec p = make_fig1_path(1.0, 0.25, 0.75, 1.0);
  CHECK_THROWS_AS(p.eval(-0.1), ValidationError);
  CHECK_THROWS_AS(p.eval(1.1), ValidationError);
}

TEST_CASE("loop construction rejects bad parameters") {
  CHECK_THROWS_AS(make_fig1_path(1.0, 0.75, 0.25, 1.0), ValidationError);
  CHECK_THROWS_AS(make_fig1_path(0.0, 0.25, 0.75, 1.0), ValidationError);
  CHECK_THROWS_AS(make_fig1_path(3.5, 0.25, 0.75, 1.0), ValidationError);
  CHECK_THROWS_AS(make_fig1_path(1.0, 0.25, 0.75, 0.5), ValidationError);
}

TEST_CASE("solid angle of built-in loops") {
  CHECK(solid_angle(degenerate_pole_path()) == doctest::Approx(0.0));

  // half of 2*pi*(1 - cos(pi/2)) = pi
  const PathSpec equator = make_fig1_path(kPi / 2.0, 0.25, 0.75, 1.0);
  CHECK(solid_angle(equator) == doctest::Approx(kPi).epsilon(1e-10));

  // alpha0 = 2*pi/3: closed form pi*(1 - cos) = 3*pi/2; cross-checked with
  // the independent Riemann oracle.
  const PathSpec wide = make_fig1_path(2.0 * kPi / 3.0, 0.25, 0.75, 1.0);
  const double riemann = solid_angle_riemann(wide, 400000);
  CHECK(solid_angle(wide) == doctest::Approx(riemann).epsilon(1e-9));
  CHECK(solid_angle(wide) == doctest::Approx(1.5 * kPi).epsilon(1e-10));

  const PathSpec hadamard = make_hadamard_path(0.25, 0.75, 1.0);
  CHECK(solid_angle(hadamard) == doctest::Approx(kPi).epsilon(1e-10));
}

TEST_CASE("solid angle matches pi*(1 - cos alpha0) across colatitudes") {
  for (double alpha0 : {0.1, 0.5, kPi / 2.0, 2.0, kPi - 0.1}) {
    const PathSpec p = make_fig1_path(alpha0, 0.25, 0.75, 1.0);
    CHECK(std::abs(solid_angle(p) - kPi * (1.0 - std::cos(alpha0))) < 1e-8);
  }
}

TEST_CASE("solid angle is reparametrization invariant") {
  const double alpha0 = 1.234;
  const double reference = solid_angle(make_fig1_path(alpha0, 0.25, 0.75, 1.0));
  for (const auto& [t1, t2, tau] :
       {std::tuple{0.1, 0.5, 2.0}, std::tuple{0.4, 0.6, 1.3}}) {
    CHECK(std::abs(solid_angle(make_fig1_path(alpha0, t1, t2, tau)) -
                   reference) < 1e-10);
  }
}

TEST_CASE("analytic derivatives match central finite differences") {
  std::mt19937_64 rng(99);
  for (const PathSpec& p : {make_fig1_path(1.2, 0.25, 0.75, 1.0),
                            make_hadamard_path(0.25, 0.75, 1.0)}) {
    const double tau = p.period();
    const double h = 1e-6 * tau;
    std::uniform_real_distribution<double> times(2.0 * h, tau - 2.0 * h);
    int checked = 0;
    for (int i = 0; checked < 1000; ++i) {
      const double t = times(rng);
      bool near_break = false;
      for (double bp : p.breakpoints()) {
        if (std::abs(t - bp) < 4.0 * h) near_break = true;
      }
      if (near_break) continue;
      ++checked;
      const PathPoint lo = p.eval(t - h);
      const PathPoint hi = p.eval(t + h);
      const PathPoint at = p.eval(t);
      CHECK(std::abs((hi.alpha - lo.alpha) / (2.0 * h) - at.alpha_dot) < 1e-6);
      CHECK(std::abs((hi.beta - lo.beta) / (2.0 * h) - at.beta_dot) < 1e-6);
    }
  }
}

TEST_CASE("gate spec validation") {
  CHECK_NOTHROW((GateSpec{kPi / 4.0, 0.0, kPi}.validate()));
  CHECK_THROWS_AS((GateSpec{-0.1, 0.0, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((GateSpec{0.1, 6.5, 0.0}.validate()), ValidationError);
  CHECK_THROWS_AS((GateSpec{0.1, 0.0, 6.5}.validate()), ValidationError);
}

TEST_CASE("custom paths from sampled tables") {
  // smooth loop: alpha = sin^2(pi t), beta = 2*pi*t over tau = 1
  const int n = 4001;
  std::vector<double> t(n), a(n), b(n);
  for (int i = 0; i < n; ++i) {
    t[i] = static_cast<double>(i) / (n - 1);
    a[i] = std::pow(std::sin(kPi * t[i]), 2);
    b[i] = 2.0 * kPi * t[i];
  }
  const PathSpec p = path_from_samples(t, a, b);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> times(0.01, 0.99);
  for (int i = 0; i < 200; ++i) {
    const double x = times(rng);
    const PathPoint pt = p.eval(x);
    CHECK(std::abs(pt.alpha - std::pow(std::sin(kPi * x), 2)) < 1e-5);
    CHECK(std::abs(pt.beta - 2.0 * kPi * x) < 1e-8);
    CHECK(std::abs(pt.alpha_dot - kPi * std::sin(2.0 * kPi * x)) < 1e-4);
    CHECK(std::abs(pt.beta_dot - 2.0 * kPi) < 1e-8);
  }

  // oracle: analytic value of (1/2) integral (1 - cos(sin^2(pi t))) * 2*pi dt
  // evaluated by dense midpoint Riemann sum on the analytic functions
  double riemann = 0.0;
  const int steps = 200000;
  for (int k = 0; k < steps; ++k) {
    const double x = (k + 0.5) / steps;
    riemann += (1.0 - std::cos(std::pow(std::sin(kPi * x), 2))) * 2.0 * kPi /
               steps;
  }
  CHECK(solid_angle(p) == doctest::Approx(0.5 * riemann).epsilon(1e-5));
}

TEST_CASE("csv ingestion round trip and validation") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "holosim_path_test";
  fs::create_directories(dir);
  const fs::path good = dir / "good.csv";
  {
    std::ofstream out(good);
    out << "t,alpha,beta\n";
    const int n = 2001;
    for (int i = 0; i < n; ++i) {
      const double t = static_cast<double>(i) / (n - 1);
      out << t << ',' << std::pow(std::sin(kPi * t), 2) << ','
          << 2.0 * kPi * t << '\n';
    }
  }
  const PathSpec p = load_path_csv(good.string());
  CHECK(p.period() == doctest::Approx(1.0));
  CHECK(p.eval(0.5).alpha == doctest::Approx(1.0).epsilon(1e-6));

  const fs::path bad_header = dir / "bad_header.csv";
  std::ofstream(bad_header) << "time,a,b\n0,0,0\n";
  CHECK_THROWS_AS(load_path_csv(bad_header.string()), ValidationError);

  const fs::path not_increasing = dir / "not_increasing.csv";
  std::ofstream(not_increasing)
      << "t,alpha,beta\n0,0,0\n0.5,0.2,0\n0.4,0.3,0\n1,0,0\n";
  CHECK_THROWS_AS(load_path_csv(not_increasing.string()), ValidationError);

  const fs::path not_cyclic = dir / "not_cyclic.csv";
  std::ofstream(not_cyclic)
      << "t,alpha,beta\n0,0,0\n0.3,0.2,0\n0.7,0.3,0\n1,0.3,0\n";
  CHECK_THROWS_AS(load_path_csv(not_cyclic.string()), ValidationError);
  // the unchecked loader defers the cyclicity failure to diagnostics
  const PathSpec broken = load_path_csv(not_cyclic.string(), false);
  CHECK(broken.cyclicity_residual() == doctest::Approx(0.3).epsilon(1e-12));

  CHECK_THROWS_AS(load_path_csv((dir / "missing.csv").string()),
                  ValidationError);
}
