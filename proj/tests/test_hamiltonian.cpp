#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "holosim/errors.hpp"
#include "holosim/hamiltonian.hpp"

using namespace holosim;

namespace {

constexpr double kPi = std::numbers::pi;

// |e><b| + H.c. scaled by the complex envelope, assembled by hand.
Matrix ramp_hamiltonian(double theta, double phi, Complex envelope) {
  Vector bright(3);
  bright << std::sin(0.5 * theta) * std::exp(-kImag * phi),
      -std::cos(0.5 * theta), 0.0;
  Vector excited(3);
  excited << 0.0, 0.0, 1.0;
  Matrix h = envelope * excited * bright.adjoint();
  return h + h.adjoint().eval();
}

PathSpec stationary_pole_path() {
  PathSegment seg;
  seg.t_start = 0.0;
  seg.t_end = 1.0;
  seg.alpha = [](double) { return 0.0; };
  seg.beta = [](double) { return 0.0; };
  seg.alpha_dot = [](double) { return 0.0; };
  seg.beta_dot = [](double) { return 0.0; };
  return PathSpec({seg});
}

// polar ramp up and back at fixed azimuth; no plateau
PathSpec ramp_only_path(double alpha0) {
  const double w = kPi;  // half-period sine over [0, 1]
  PathSegment seg;
  seg.t_start = 0.0;
  seg.t_end = 1.0;
  seg.alpha = [=](double t) { return alpha0 * std::sin(w * t); };
  seg.beta = [](double) { return 0.0; };
  seg.alpha_dot = [=](double t) { return alpha0 * w * std::cos(w * t); };
  seg.beta_dot = [](double) { return 0.0; };
  return PathSpec({seg});
}

}  // namespace

TEST_CASE("zero-diagonal family on the radial ramps") {
  const double theta = 0.9;
  const double phi = 2.4;
  const PathSpec path = make_fig1_path(1.4, 0.25, 0.75, 1.0);
  const LambdaModel m = model_k22_zero(theta, phi, path);
  for (double t : {0.05, 0.15, 0.8, 0.95}) {
    const PathPoint p = path.eval(t);
    const Matrix expected =
        ramp_hamiltonian(theta, phi, Complex(0.0, 0.5 * p.alpha_dot));
    CHECK(max_norm(m.assemble(t) - expected) < 1e-14);
    CHECK(m.sample(t).delta == doctest::Approx(0.0));
  }
}

TEST_CASE("zero-diagonal family on the azimuthal plateau") {
  const double alpha0 = 1.1;
  const PathSpec path = make_fig1_path(alpha0, 0.25, 0.75, 1.0);
  const LambdaModel m = model_k22_zero(0.3, 0.0, path);
  const double beta_dot = 2.0 * kPi / 0.5;
  for (double t : {0.3, 0.5, 0.7}) {
    const LambdaModel::Sample s = m.sample(t);
    CHECK(s.delta ==
          doctest::Approx(-beta_dot * (1.0 + std::cos(alpha0))).epsilon(1e-13));
    CHECK(s.omega ==
          doctest::Approx(0.5 * beta_dot * std::sin(alpha0)).epsilon(1e-13));
    // drive phase tracks the azimuth
    const double wrapped =
        std::remainder(s.kappa - path.eval(t).beta, 2.0 * kPi);
    CHECK(std::abs(wrapped) < 1e-12);
  }
}

TEST_CASE("drive phase carries the envelope sign on the down ramp") {
  const PathSpec path = make_fig1_path(1.0, 0.25, 0.75, 1.0);
  const LambdaModel m = model_k22_zero(0.5, 0.0, path);
  const double t = 0.9;  // alpha_dot < 0 here
  const PathPoint p = path.eval(t);
  REQUIRE(p.alpha_dot < 0.0);
  const LambdaModel::Sample s = m.sample(t);
  CHECK(s.omega == doctest::Approx(0.5 * std::abs(p.alpha_dot)));
  CHECK(std::abs(std::remainder(s.kappa - (p.beta - kPi / 2.0), 2.0 * kPi)) <
        1e-12);
}

TEST_CASE("negative-beta-rate family matches its closed form at the equator") {
  const PathSpec path = make_fig1_path(kPi / 2.0, 0.25, 0.75, 1.0);
  const LambdaModel m = model_k22_negbeta(1.8, 0.2, path);
  const double beta_dot = 4.0 * kPi;
  for (double t : {0.35, 0.55, 0.65}) {
    const LambdaModel::Sample s = m.sample(t);
    // cos(pi/2) = 0 kills the first detuning term
    CHECK(s.delta == doctest::Approx(-beta_dot).epsilon(1e-13));
    // cot(pi/4) * cos^2(pi/4) = 1/2
    CHECK(s.omega == doctest::Approx(0.5 * beta_dot).epsilon(1e-13));
  }
  // the ramps coincide with the zero-diagonal family
  const LambdaModel reference = model_k22_zero(1.8, 0.2, path);
  for (double t : {0.1, 0.9}) {
    CHECK(max_norm(m.assemble(t) - reference.assemble(t)) < 1e-14);
  }
}

TEST_CASE("stationary path gives a vanishing drive") {
  for (const LambdaModel& m :
       {model_k22_zero(0.7, 0.1, stationary_pole_path()),
        model_k22_negbeta(0.7, 0.1, stationary_pole_path())}) {
    for (double t : {0.0, 0.5, 1.0}) {
      CHECK(max_norm(m.assemble(t)) == 0.0);
    }
    CHECK(pulse_area(m) == doctest::Approx(0.0));
  }
}

TEST_CASE("negative-beta-rate family is singular at the moving pole") {
  // azimuth sweeps while alpha sits at the pole
  PathSegment seg;
  seg.t_start = 0.0;
  seg.t_end = 1.0;
  seg.alpha = [](double) { return 0.0; };
  seg.beta = [](double t) { return 2.0 * kPi * t; };
  seg.alpha_dot = [](double) { return 0.0; };
  seg.beta_dot = [](double) { return 2.0 * kPi; };
  const LambdaModel m = model_k22_negbeta(0.4, 0.0, PathSpec({seg}));
  CHECK_THROWS_AS(m.sample(0.5), SingularityError);
}

TEST_CASE("general parameter relations") {
  const double alpha0 = 1.3;
  const PathSpec ramp = ramp_only_path(alpha0);

  SUBCASE("quarter-phase drive reproduces the resonant ramp") {
    const LambdaModel m =
        solve_parameters(0.6, 1.0, ramp, [](double) { return kPi / 2.0; });
    for (double t : {0.1, 0.3, 0.45}) {
      const PathPoint p = ramp.eval(t);
      const LambdaModel::Sample s = m.sample(t);
      CHECK(s.delta == doctest::Approx(0.0).epsilon(1e-12));
      CHECK(s.omega == doctest::Approx(0.5 * std::abs(p.alpha_dot)));
    }
  }

  SUBCASE("frozen polar angle leaves only the detuning") {
    const PathSpec loop = make_fig1_path(1.0, 0.25, 0.75, 1.0);
    const LambdaModel m = solve_parameters(
        0.6, 1.0, loop, [loop](double t) { return loop.eval(t).beta + 1.0; });
    const double t = 0.5;  // plateau: alpha_dot = 0
    const LambdaModel::Sample s = m.sample(t);
    CHECK(s.omega == doctest::Approx(0.0));
    CHECK(s.delta == doctest::Approx(-4.0 * kPi).epsilon(1e-13));
  }

  SUBCASE("declared indeterminate combination") {
    const PathSpec loop = make_fig1_path(1.0, 0.25, 0.75, 1.0);
    const LambdaModel m = solve_parameters(
        0.6, 1.0, loop, [loop](double t) { return loop.eval(t).beta; });
    CHECK_THROWS_AS(m.sample(0.5), NumericsError);
  }
}

TEST_CASE("assembled matrix structure") {
  SUBCASE("pure detuning") {
    const LambdaModel m = LambdaModel::from_functions(
        0.4, 0.0, [](double) { return 2.5; },
        [](double) { return Complex{0.0, 0.0}; }, 1.0);
    Matrix expected = Matrix::Zero(3, 3);
    expected(2, 2) = 2.5;
    CHECK(max_norm(m.assemble(0.3) - expected) < 1e-15);
  }

  SUBCASE("polar axis removes the second drive") {
    const LambdaModel m = LambdaModel::from_functions(
        kPi, 0.7, [](double) { return 0.0; },
        [](double) { return Complex{1.0, 0.0}; }, 1.0);
    const auto [on_0, on_1] = m.physical_drives(0.0);
    CHECK(std::abs(on_1) < 1e-16);
    CHECK(std::abs(on_0 - std::exp(kImag * 0.7)) < 1e-15);
    const Matrix h = m.assemble(0.0);
    CHECK(std::abs(h(2, 1)) < 1e-16);
  }

  SUBCASE("hermiticity across the run") {
    const LambdaModel m =
        model_k22_zero(kPi / 4.0, 0.0, make_hadamard_path(0.25, 0.75, 1.0));
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> times(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
      const Matrix h = m.assemble(times(rng));
      CHECK(hermiticity_residual(h) < 1e-14);
    }
  }
}

TEST_CASE("pulse areas reproduce the closed forms") {
  auto area_zero = [](double a) { return kPi * std::sin(a) + a; };
  auto area_negbeta = [](double a) {
    return 2.0 * kPi * std::cos(0.5 * a) * std::cos(0.5 * a) /
               std::tan(0.5 * a) +
           a;
  };

  SUBCASE("crossover point") {
    const PathSpec path = make_fig1_path(kPi / 2.0, 0.25, 0.75, 1.0);
    // both closed forms evaluate to 3*pi/2 at the equator
    CHECK(pulse_area(model_k22_zero(0.1, 0.0, path)) ==
          doctest::Approx(1.5 * kPi).epsilon(1e-10));
    CHECK(pulse_area(model_k22_negbeta(0.1, 0.0, path)) ==
          doctest::Approx(1.5 * kPi).epsilon(1e-10));
  }

  SUBCASE("colatitude sweep, two timing choices") {
    for (double alpha0 : {0.3, 0.8, kPi / 2.0, 2.0, 2.8}) {
      for (const auto& [t1, t2, tau] :
           {std::tuple{0.25, 0.75, 1.0}, std::tuple{0.2, 0.9, 1.5}}) {
        const PathSpec path = make_fig1_path(alpha0, t1, t2, tau);
        CHECK(std::abs(pulse_area(model_k22_zero(0.0, 0.0, path)) -
                       area_zero(alpha0)) < 1e-8);
        CHECK(std::abs(pulse_area(model_k22_negbeta(0.0, 0.0, path)) -
                       area_negbeta(alpha0)) < 1e-8);
      }
    }
  }

  SUBCASE("ordering flips at the equator") {
    for (int i = 0; i < 50; ++i) {
      const double alpha0 = 0.05 + (kPi - 0.05) * i / 49;
      const PathSpec path = make_fig1_path(alpha0, 0.25, 0.75, 1.0);
      const double a1 = pulse_area(model_k22_zero(0.0, 0.0, path));
      const double a2 = pulse_area(model_k22_negbeta(0.0, 0.0, path));
      if (alpha0 < kPi / 2.0 - 1e-9) {
        CHECK(a1 < a2);
      } else if (alpha0 > kPi / 2.0 + 1e-9) {
        CHECK(a2 < a1);
      }
      CHECK(a1 >= alpha0);
      CHECK(a2 >= alpha0);
    }
  }
}

TEST_CASE("systematic error scales the drive linearly") {
  const PathSpec path = make_hadamard_path(0.25, 0.75, 1.0);
  const LambdaModel m = model_k22_zero(kPi / 4.0, 0.0, path);

  const LambdaModel same = apply_error(m, ErrorModel{0.0});
  for (double t : {0.2, 0.5, 0.9}) {
    CHECK(max_norm(same.assemble(t) - m.assemble(t)) == 0.0);
  }

  const LambdaModel detuned = apply_error(
      LambdaModel::from_functions(0.0, 0.0, [](double) { return 2.0; },
                                  [](double) { return Complex{0.0, 0.0}; },
                                  1.0),
      ErrorModel{0.1});
  CHECK(detuned.assemble(0.0)(2, 2).real() == doctest::Approx(2.2));

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> times(0.0, 1.0);
  const LambdaModel scaled = apply_error(m, ErrorModel{0.3});
  for (int i = 0; i < 50; ++i) {
    const double t = times(rng);
    CHECK(max_norm(scaled.assemble(t) - (1.3 * m.assemble(t)).eval()) < 1e-14);
    CHECK(scaled.sample(t).kappa == doctest::Approx(m.sample(t).kappa));
  }

  CHECK_THROWS_AS(apply_error(m, ErrorModel{1.0}), ValidationError);
}

TEST_CASE("custom dynamical-diagonal targets") {
  const PathSpec path = make_fig1_path(1.2, 0.25, 0.75, 1.0);

  SUBCASE("zero target reproduces the first family") {
    const LambdaModel custom =
        model_custom_k22(0.8, 0.4, path, [](double) { return 0.0; });
    const LambdaModel reference = model_k22_zero(0.8, 0.4, path);
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      CHECK(max_norm(custom.assemble(t) - reference.assemble(t)) < 1e-12);
    }
  }

  SUBCASE("negative-beta-rate target reproduces the second family") {
    const LambdaModel custom = model_custom_k22(
        0.8, 0.4, path, [path](double t) { return -path.eval(t).beta_dot; });
    const LambdaModel reference = model_k22_negbeta(0.8, 0.4, path);
    for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
      CHECK(max_norm(custom.assemble(t) - reference.assemble(t)) < 1e-12);
    }
  }

  SUBCASE("targets with a nonzero loop integral are rejected") {
    CHECK_THROWS_AS(
        model_custom_k22(0.8, 0.4, path, [](double) { return 1.0; }),
        ValidationError);
  }

  SUBCASE("nonzero target at the pole is singular") {
    const LambdaModel custom = model_custom_k22(
        0.8, 0.4, path, [](double t) { return std::cos(2.0 * kPi * t); });
    CHECK_THROWS_AS(custom.sample(1e-9), SingularityError);
  }
}

TEST_CASE("model bookkeeping") {
  const PathSpec path = make_fig1_path(1.0, 0.25, 0.75, 1.0);
  const LambdaModel m = model_k22_negbeta(0.2, 0.1, path);
  CHECK(m.k22_choice() == K22Choice::kNegBetaDot);
  CHECK(to_string(m.k22_choice()) == "k22_negbeta");
  CHECK(m.period() == doctest::Approx(1.0));
  CHECK(m.breakpoints() == std::vector<double>{0.25, 0.75});
  CHECK(m.has_path());
  CHECK_THROWS_AS(LambdaModel::from_functions(
                      0.0, 0.0, [](double) { return 0.0; },
                      [](double) { return Complex{}; }, 0.0),
                  ValidationError);
  const LambdaModel raw = LambdaModel::from_functions(
      0.0, 0.0, [](double) { return 0.0; }, [](double) { return Complex{}; },
      1.0);
  CHECK_FALSE(raw.has_path());
  CHECK_THROWS_AS(raw.path(), ValidationError);
}
