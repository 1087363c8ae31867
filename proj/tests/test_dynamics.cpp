#include <doctest.h>

#include <cmath>
#include <random>

#include "magnocool/covariance.hpp"
#include "magnocool/errors.hpp"
#include "magnocool/formulas.hpp"
#include "magnocool/generators.hpp"
#include "magnocool/propagation.hpp"
#include "magnocool/system.hpp"

using namespace magnocool;

namespace {

SystemSpec default_bipartite() {
  return bipartite_system(/*delta_m=*/1.0, /*kappa_m=*/0.1, /*kappa_b=*/1e-5,
                          /*n_m=*/0.0, /*n_b=*/100.0);
}

ControlVector controls1(Complex g) {
  ControlVector u(1);
  u(0) = g;
  return u;
}

}  // namespace

TEST_CASE("decoupled drift blocks are [[-k/2, w], [-w, -k/2]]") {
  const auto sys = default_bipartite();
  const auto gen = build_generators(sys, controls1({0.0, 0.0}));

  // magnon block: omega = 1 (delta_m), kappa = 0.1
  CHECK(gen.drift(0, 0) == doctest::Approx(-0.05));
  CHECK(gen.drift(0, 1) == doctest::Approx(1.0));
  CHECK(gen.drift(1, 0) == doctest::Approx(-1.0));
  CHECK(gen.drift(1, 1) == doctest::Approx(-0.05));
  // phonon block: omega = 1, kappa = 1e-5
  CHECK(gen.drift(2, 2) == doctest::Approx(-5e-6));
  CHECK(gen.drift(2, 3) == doctest::Approx(1.0));
  // off-diagonal blocks vanish without coupling
  CHECK(gen.drift.topRightCorner(2, 2).norm() == doctest::Approx(0.0));
  CHECK(gen.drift.bottomLeftCorner(2, 2).norm() == doctest::Approx(0.0));

  // diffusion blocks kappa (nbar + 1/2) I2
  CHECK(gen.diffusion(0, 0) == doctest::Approx(0.1 * 0.5));
  CHECK(gen.diffusion(2, 2) == doctest::Approx(1e-5 * 100.5));
  CHECK((gen.diffusion - gen.diffusion.transpose()).norm() == doctest::Approx(0.0));
}

TEST_CASE("real G couples the magnon only to the position quadrature of b") {
  const auto sys = default_bipartite();
  const double g = 0.2;
  const auto gen = build_generators(sys, controls1({g, 0.0}));

  // Magnon rows driven by x_b only; p_b column stays empty.
  CHECK(gen.drift(0, 2) == doctest::Approx(0.0));
  CHECK(gen.drift(0, 3) == doctest::Approx(0.0));
  CHECK(gen.drift(1, 2) == doctest::Approx(-2.0 * g));
  CHECK(gen.drift(1, 3) == doctest::Approx(0.0));
  // Phonon rows driven by x_m only.
  CHECK(gen.drift(2, 0) == doctest::Approx(0.0));
  CHECK(gen.drift(3, 0) == doctest::Approx(-2.0 * g));
  CHECK(gen.drift(3, 1) == doctest::Approx(0.0));

  // An imaginary part moves the drive onto the p_m quadrature instead:
  // H gains -2 Im(G) p_m x_b, so x_m becomes the driven row.
  const auto gen_im = build_generators(sys, controls1({0.0, g}));
  CHECK(gen_im.drift(0, 2) == doctest::Approx(-2.0 * g));
  CHECK(gen_im.drift(1, 2) == doctest::Approx(0.0));
}

TEST_CASE("build_generators input contracts") {
  const auto sys = default_bipartite();
  CHECK_THROWS_AS(build_generators(sys, ControlVector::Zero(2)),
                  std::invalid_argument);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(build_generators(sys, controls1({inf, 0.0})),
                  std::invalid_argument);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(build_generators(sys, controls1({0.0, nan})),
                  std::invalid_argument);

  // Real coupling kinds reject complex amplitudes.
  auto tri = tripartite_system(1.0, 1000.0, 0.1, 1e-3, 1e-5, 0.0, 0.0, 100.0);
  ControlVector u(2);
  u << Complex(1.0, 0.5), Complex(0.0, 0.0);
  CHECK_THROWS_AS(build_generators(tri, u), std::invalid_argument);
}

TEST_CASE("thermal covariance construction") {
  SUBCASE("vacuum") {
    const auto sys = bipartite_system(1.0, 0.1, 1e-5, 0.0, 0.0);
    const auto st = thermal_covariance(sys);
    CHECK((st.sigma - 0.5 * Mat::Identity(4, 4)).norm() == doctest::Approx(0.0));
    CHECK(st.time == 0.0);
  }
  SUBCASE("hot phonon, cold magnon") {
    const auto st = thermal_covariance(default_bipartite());
    CHECK(st.sigma(0, 0) == doctest::Approx(0.5));
    CHECK(st.sigma(1, 1) == doctest::Approx(0.5));
    CHECK(st.sigma(2, 2) == doctest::Approx(100.5));
    CHECK(st.sigma(3, 3) == doctest::Approx(100.5));
  }
}

TEST_CASE("thermal covariance is a fixed point with zero coupling") {
  const auto sys = default_bipartite();
  const auto gen = build_generators(sys, controls1({0.0, 0.0}));
  const auto st0 = thermal_covariance(sys);
  // 100 periods in one exact stride plus step-by-step over coarse strides.
  auto st = st0;
  const auto prop = make_propagator(gen, periods_to_time(1.0));
  for (int k = 0; k < 100; ++k) st = apply(prop, st);
  CHECK((st.sigma - st0.sigma).norm() <= 1e-8);
}

TEST_CASE("propagate identity when A = D = 0") {
  GeneratorPair gen;
  gen.drift = Mat::Zero(4, 4);
  gen.diffusion = Mat::Zero(4, 4);
  CovarianceState st;
  st.sigma = Mat::Identity(4, 4) * 3.7;
  st.sigma(0, 2) = st.sigma(2, 0) = 0.4;
  const auto out = propagate(st, gen, 2.5);
  CHECK((out.sigma - st.sigma).norm() == doctest::Approx(0.0));
  CHECK(out.time == doctest::Approx(2.5));
}

TEST_CASE("single damped mode follows the closed-form occupancy decay") {
  // One mode with kappa = 0.08, nbar = 0.3, starting from n0 = 2.0:
  // n(t) = nbar + (n0 - nbar) exp(-kappa t).
  SystemSpec sys;
  sys.modes = {{"b", 1.0, 0.08, 0.3}};
  sys.target_mode = 0;
  const auto gen = build_generators(sys, ControlVector::Zero(0));

  CovarianceState st;
  st.sigma = (2.0 + 0.5) * Mat::Identity(2, 2);
  st.time = 0.0;
  for (double t : {0.7, 3.1, 12.0, 55.0}) {
    const auto out = propagate(st, gen, t);
    const double expect = 0.3 + (2.0 - 0.3) * std::exp(-0.08 * t);
    CHECK(occupancy(out, 0) == doctest::Approx(expect).epsilon(1e-10));
  }
}

TEST_CASE("propagation composes as a semigroup") {
  const auto sys = default_bipartite();
  const auto gen = build_generators(sys, controls1({0.35, -0.1}));
  const auto st0 = thermal_covariance(sys);
  const auto one = propagate(st0, gen, 1.9);
  const auto two = propagate(propagate(st0, gen, 0.4), gen, 1.5);
  CHECK((one.sigma - two.sigma).norm() <= 1e-10 * one.sigma.norm());
  CHECK(one.time == doctest::Approx(two.time));
}

TEST_CASE("propagation is affine in the initial covariance") {
  const auto sys = default_bipartite();
  const auto gen = build_generators(sys, controls1({0.5, 0.2}));
  auto a = thermal_covariance(sys);
  auto b = a;
  b.sigma *= 0.2;
  b.sigma += 0.1 * Mat::Identity(4, 4);

  const double w = 0.3;
  CovarianceState mix;
  mix.sigma = w * a.sigma + (1 - w) * b.sigma;
  mix.time = 0.0;

  const double dt = periods_to_time(2.0);
  const auto pa = propagate(a, gen, dt);
  const auto pb = propagate(b, gen, dt);
  const auto pm = propagate(mix, gen, dt);
  CHECK((pm.sigma - (w * pa.sigma + (1 - w) * pb.sigma)).norm() <=
        1e-12 * pm.sigma.norm());
}

TEST_CASE("beam-splitter coupling conserves total excitation without damping") {
  SystemSpec sys;
  sys.modes = {{"m", 1.0, 0.0, 0.0}, {"b", 1.0, 0.0, 2.0}};
  CouplingSpec c;
  c.kind = CouplingKind::BeamSplitterRWA;
  c.mode_m = 0;
  c.mode_b = 1;
  c.amplitude = AmplitudeSource::control_slot(0);
  sys.couplings = {c};
  sys.n_control_slots = 1;
  sys.slot_labels = {"g"};
  sys.target_mode = 1;

  const auto gen = build_generators(sys, controls1({0.23, 0.0}));
  auto st = thermal_covariance(sys);
  const double total0 = occupancy(st, 0) + occupancy(st, 1);
  const auto prop = make_propagator(gen, periods_to_time(0.05));
  double max_dev = 0.0;
  for (int k = 0; k < 200; ++k) {  // 10 periods
    st = apply(prop, st);
    const double total = occupancy(st, 0) + occupancy(st, 1);
    max_dev = std::max(max_dev, std::abs(total - total0) / total0);
  }
  CHECK(max_dev <= 1e-8);
  // and the exchange actually happens
  CHECK(occupancy(st, 0) > 1e-3);
}

TEST_CASE("physicality is preserved along random episode schedules") {
  // Episode-shaped random schedules (reset between episodes, as the control
  // environment produces) crossing in and out of the unstable regime.
  const auto sys = default_bipartite();
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> amp(-0.7, 0.7);
  const double dt = periods_to_time(0.1);
  double min_nu = std::numeric_limits<double>::infinity();
  for (int ep = 0; ep < 10; ++ep) {
    auto st = thermal_covariance(sys);
    for (int k = 0; k < 50; ++k) {
      const auto gen = build_generators(sys, controls1({amp(rng), amp(rng)}));
      st = propagate(st, gen, dt);
      min_nu = std::min(min_nu, min_symplectic_eigenvalue(st.sigma));
    }
  }
  CHECK(min_nu >= 0.5 - 1e-9);
}

TEST_CASE("ultrastrong random schedules stay finite even when heating blows up") {
  // |G| up to 5 sqrt(2): violently unstable intervals; the covariance grows
  // by many orders within one episode but must remain finite and symmetric.
  const auto sys = default_bipartite();
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> amp(-5.0, 5.0);
  auto st = thermal_covariance(sys);
  const double dt = periods_to_time(0.1);
  for (int k = 0; k < 50; ++k) {
    const auto gen = build_generators(sys, controls1({amp(rng), amp(rng)}));
    st = propagate(st, gen, dt);
  }
  CHECK(st.sigma.allFinite());
  CHECK((st.sigma - st.sigma.transpose()).norm() == doctest::Approx(0.0));
  CHECK(occupancy(st, 1) > 100.0);  // net heating, not cooling
}

TEST_CASE("occupancy and cooling quotient") {
  CovarianceState vac;
  vac.sigma = 0.5 * Mat::Identity(2, 2);
  CHECK(occupancy(vac, 0) == doctest::Approx(0.0));

  CovarianceState th;
  th.sigma = (3.25 + 0.5) * Mat::Identity(2, 2);
  CHECK(occupancy(th, 0) == doctest::Approx(3.25));

  CHECK(cooling_quotient(th, 0, 100.0) == doctest::Approx(0.0325));
  // scaling the occupancy scales the quotient
  CovarianceState th2;
  th2.sigma = (6.5 + 0.5) * Mat::Identity(2, 2);
  CHECK(cooling_quotient(th2, 0, 100.0) ==
        doctest::Approx(2.0 * cooling_quotient(th, 0, 100.0)));
  CHECK_THROWS_AS(cooling_quotient(th, 0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(cooling_quotient(th, 0, -1.0), std::invalid_argument);

  // quotient floors a round-off-negative occupancy
  CovarianceState below;
  below.sigma = 0.4999999 * Mat::Identity(2, 2);
  CHECK(cooling_quotient(below, 0, 100.0) == doctest::Approx(1e-14));
}

TEST_CASE("steady state") {
  const auto sys = default_bipartite();

  SUBCASE("decoupled modes settle to the thermal covariance") {
    const auto gen = build_generators(sys, controls1({0.0, 0.0}));
    const auto ss = steady_state(gen);
    CHECK((ss.sigma - thermal_covariance(sys).sigma).norm() <= 1e-8);
  }
  SUBCASE("residual of the defining equation") {
    const auto gen = build_generators(sys, controls1({0.1, 0.05}));
    const auto ss = steady_state(gen);
    const Mat res = gen.drift * ss.sigma + ss.sigma * gen.drift.transpose() +
                    gen.diffusion;
    CHECK(res.norm() <= 1e-10 * gen.diffusion.norm());
  }
  SUBCASE("matches long-time integration at weak red-sideband coupling") {
    const auto gen = build_generators(sys, controls1({0.05, 0.0}));
    const auto ss = steady_state(gen);
    auto st = thermal_covariance(sys);
    const auto prop = make_propagator(gen, periods_to_time(1.0));
    for (int k = 0; k < 200; ++k) st = apply(prop, st);
    CHECK((st.sigma - ss.sigma).norm() <= 1e-4 * ss.sigma.norm());
  }
  SUBCASE("undamped drift has no steady state") {
    SystemSpec undamped = sys;
    for (auto& m : undamped.modes) m.damping = 0.0;
    const auto gen = build_generators(undamped, controls1({0.0, 0.0}));
    CHECK_THROWS_AS(steady_state(gen), NoSteadyState);
  }
  SUBCASE("ultrastrong constant coupling is dynamically unstable") {
    const auto gen = build_generators(sys, controls1({2.0, 0.0}));
    CHECK_THROWS_AS(steady_state(gen), NoSteadyState);
  }
}

TEST_CASE("adiabatic elimination of a lossy cavity") {
  SUBCASE("no coupling leaves the magnon untouched") {
    const auto [dm, km] = adiabatic_elimination(0.7, 2.0, 0.5, 0.01, 0.0);
    CHECK(dm == doctest::Approx(0.7));
    CHECK(km == doctest::Approx(0.01));
  }
  SUBCASE("resonant cavity only adds damping") {
    const auto [dm, km] = adiabatic_elimination(0.7, 0.0, 0.5, 0.01, 0.3);
    CHECK(dm == doctest::Approx(0.7));
    CHECK(km == doctest::Approx(0.01 + 0.09 / 0.5));
  }
  SUBCASE("large cavity damping decouples it, monotonically") {
    double prev_shift = std::numeric_limits<double>::infinity();
    for (double ka : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
      const auto [dm, km] = adiabatic_elimination(0.7, 2.0, ka, 0.01, 0.3);
      const double shift = std::abs(dm - 0.7) + std::abs(km - 0.01);
      CHECK(shift < prev_shift);
      prev_shift = shift;
    }
    const auto [dm, km] = adiabatic_elimination(0.7, 2.0, 1e8, 0.01, 0.3);
    CHECK(dm == doctest::Approx(0.7).epsilon(1e-6));
    CHECK(km == doctest::Approx(0.01).epsilon(1e-4));
  }
  CHECK_THROWS_AS(adiabatic_elimination(0.7, 0.0, 0.0, 0.01, 0.3),
                  std::invalid_argument);
}

TEST_CASE("Bose occupancy") {
  CHECK(bose_occupancy(1.0, 0.0) == doctest::Approx(0.0));
  CHECK(bose_occupancy(std::log(2.0), 1.0) == doctest::Approx(1.0));
  // classical limit checked against the series 1/x - 1/2 + x/12
  const double x = 1e-3;
  const double series = 1.0 / x - 0.5 + x / 12.0;
  CHECK(bose_occupancy(x, 1.0) == doctest::Approx(series).epsilon(1e-9));
  CHECK_THROWS_AS(bose_occupancy(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bose_occupancy(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(bose_occupancy(1.0, -1.0), std::invalid_argument);
}

TEST_CASE("symplectic eigenvalues") {
  CHECK(min_symplectic_eigenvalue(0.5 * Mat::Identity(6, 6)) ==
        doctest::Approx(0.5));
  // thermal state: nu = nbar + 1/2 per mode
  Mat sigma = Mat::Zero(4, 4);
  sigma.diagonal() << 1.7, 1.7, 0.5, 0.5;
  const Vec nu = symplectic_eigenvalues(sigma);
  CHECK(nu(0) == doctest::Approx(1.7));
  CHECK(nu(1) == doctest::Approx(0.5));
  // non-positive-definite input reports -inf
  Mat bad = Mat::Identity(4, 4);
  bad(0, 0) = -1.0;
  CHECK(min_symplectic_eigenvalue(bad) ==
        -std::numeric_limits<double>::infinity());
}

TEST_CASE("spec validation rejects malformed systems") {
  auto sys = default_bipartite();
  sys.modes[0].frequency = -1.0;
  CHECK_THROWS_AS(sys.validate(), std::invalid_argument);

  sys = default_bipartite();
  sys.couplings[0].mode_b = 0;  // self coupling
  CHECK_THROWS_AS(sys.validate(), std::invalid_argument);

  sys = default_bipartite();
  sys.couplings[0].amplitude = AmplitudeSource::control_slot(3);
  CHECK_THROWS_AS(sys.validate(), std::invalid_argument);

  sys = default_bipartite();
  sys.couplings[0].amplitude = AmplitudeSource::fixed({0.1, 0.0});
  // slot 0 now unreferenced
  CHECK_THROWS_AS(sys.validate(), std::invalid_argument);
}
