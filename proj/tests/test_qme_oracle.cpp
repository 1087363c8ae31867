#include <doctest.h>

#include <cmath>
#include <random>

#include "magnocool/covariance.hpp"
#include "magnocool/errors.hpp"
#include "magnocool/generators.hpp"
#include "magnocool/propagation.hpp"
#include "magnocool/qme.hpp"
#include "magnocool/system.hpp"

using namespace magnocool;
using namespace magnocool::qme;

namespace {

SystemSpec small_bipartite(double kappa_m, double kappa_b, double n_b) {
  return bipartite_system(1.0, kappa_m, kappa_b, 0.0, n_b);
}

ControlVector controls1(Complex g) {
  ControlVector u(1);
  u(0) = g;
  return u;
}

}  // namespace

TEST_CASE("hamiltonian with zero couplings is diagonal in the number basis") {
  SystemSpec sys;
  sys.modes = {{"a", 0.7, 0.0, 0.0}, {"b", 1.3, 0.0, 0.0}};
  sys.target_mode = 1;
  const FockConfig fock{{3, 4}};
  const auto ops = FockOperators::build(fock);
  const CMat h = build_hamiltonian(sys, ControlVector::Zero(0), ops);

  CHECK((h - CMat(h.diagonal().asDiagonal())).norm() <= 1e-14);
  // entry for |n_a, n_b> is 0.7 n_a + 1.3 n_b; basis index = n_a * 4 + n_b
  for (int na = 0; na < 3; ++na)
    for (int nb = 0; nb < 4; ++nb)
      CHECK(h(na * 4 + nb, na * 4 + nb).real() ==
            doctest::Approx(0.7 * na + 1.3 * nb));
}

TEST_CASE("single mode hamiltonian is diag(0, 1, 2)") {
  SystemSpec sys;
  sys.modes = {{"b", 1.0, 0.0, 0.0}};
  sys.target_mode = 0;
  const auto ops = FockOperators::build(FockConfig{{3}});
  const CMat h = build_hamiltonian(sys, ControlVector::Zero(0), ops);
  CHECK(h(0, 0).real() == doctest::Approx(0.0));
  CHECK(h(1, 1).real() == doctest::Approx(1.0));
  CHECK(h(2, 2).real() == doctest::Approx(2.0));
  CHECK((h - CMat(h.diagonal().asDiagonal())).norm() <= 1e-14);
}

TEST_CASE("bipartite coupling matrix elements follow the ladder algebra") {
  // (G m + G* m^dag)(b + b^dag) connects |n_m, n_b> with
  // |n_m - 1, n_b +- 1> (amplitude G) and |n_m + 1, n_b +- 1> (G*).
  const auto sys = small_bipartite(0.0, 0.0, 0.0);
  const Complex g(0.12, -0.07);
  const FockConfig fock{{4, 4}};
  const auto ops = FockOperators::build(fock);
  const CMat h = build_hamiltonian(sys, controls1(g), ops);

  auto idx = [](int nm, int nb) { return nm * 4 + nb; };
  // <1, 2| H |2, 1> = G sqrt(2) sqrt(2): annihilate the magnon, raise b
  CHECK(std::abs(h(idx(1, 2), idx(2, 1)) - g * 2.0) <= 1e-13);
  // <2, 0| H |3, 1> = G sqrt(3) sqrt(1): annihilate both
  const Complex expect_lower = g * std::sqrt(3.0);
  CHECK(std::abs(h(idx(2, 0), idx(3, 1)) - expect_lower) <= 1e-13);
  // Hermiticity pairs the conjugate element
  CHECK(std::abs(h(idx(3, 1), idx(2, 0)) - std::conj(expect_lower)) <= 1e-13);
  // no elements within one magnon-number sector
  CHECK(std::abs(h(idx(2, 1), idx(2, 2))) <= 1e-14);
  CHECK((h - h.adjoint()).norm() <= 1e-13);
}

TEST_CASE("dimension bound is enforced with a memory estimate") {
  FockConfig fock{{64, 64, 2}};
  CHECK_THROWS_WITH_AS(fock.validate(), doctest::Contains("MiB"),
                       std::invalid_argument);
  CHECK_THROWS_AS(FockConfig{{1}}.validate(), std::invalid_argument);
}

TEST_CASE("lindblad right-hand side") {
  SystemSpec sys_free;
  sys_free.modes = {{"b", 1.0, 0.0, 0.0}};
  sys_free.target_mode = 0;
  const auto ops = FockOperators::build(FockConfig{{5}});

  SUBCASE("no Hamiltonian, no damping: zero derivative") {
    const CMat rho = thermal_density(FockConfig{{5}}, {0.7});
    const CMat zero_h = CMat::Zero(5, 5);
    CHECK(lindblad_rhs(rho, zero_h, sys_free, ops).norm() <= 1e-15);
  }

  SUBCASE("spontaneous decay of |1><1| at rate kappa") {
    SystemSpec sys = sys_free;
    sys.modes[0].damping = 0.37;
    CMat rho = CMat::Zero(5, 5);
    rho(1, 1) = 1.0;
    const CMat h = build_hamiltonian(sys, ControlVector::Zero(0), ops);
    const CMat rhs = lindblad_rhs(rho, h, sys, ops);
    const double dn = (rhs * ops.number[0]).trace().real();
    CHECK(dn == doctest::Approx(-0.37).epsilon(1e-12));
  }

  SUBCASE("trace-free for random Hermitian inputs") {
    SystemSpec sys = small_bipartite(0.1, 0.02, 0.6);
    const FockConfig fock{{4, 4}};
    const auto bops = FockOperators::build(fock);
    const CMat h = build_hamiltonian(sys, controls1({0.2, 0.1}), bops);
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
      CMat r(16, 16);
      for (Eigen::Index i = 0; i < r.size(); ++i)
        r.data()[i] = Complex(normal(rng), normal(rng));
      const CMat rho = 0.5 * (r + r.adjoint());
      const CMat rhs = lindblad_rhs(rho, h, sys, bops);
      CHECK(std::abs(rhs.trace()) <= 1e-12 * rho.norm());
    }
  }
}

TEST_CASE("thermal product state is stationary without couplings") {
  auto sys = small_bipartite(0.08, 0.02, 0.5);
  const FockConfig fock{{6, 6}};
  const auto ops = FockOperators::build(fock);
  const CMat rho0 = thermal_density(fock, {0.0, 0.5});
  const auto schedule = ControlSchedule::zero(1, periods_to_time(1.0), 10);
  const auto traj = evolve_qme(rho0, sys, schedule, periods_to_time(10.0), ops);
  CHECK((traj.samples.back().rho - rho0).norm() <= 1e-6);
  CHECK(traj.max_trace_drift <= 1e-6);
}

TEST_CASE("single decoupled mode decays on the closed-form curve") {
  SystemSpec sys;
  sys.modes = {{"b", 1.0, 0.2, 0.4}};
  sys.target_mode = 0;
  const FockConfig fock{{30}};
  const auto ops = FockOperators::build(fock);
  const CMat rho0 = thermal_density(fock, {1.5});
  const double n0 = moments_from_density(rho0, sys, ops).occupancies(0);

  const auto schedule = ControlSchedule::zero(0, periods_to_time(0.5), 10);
  const auto traj = evolve_qme(rho0, sys, schedule, periods_to_time(5.0), ops);
  for (const auto& s : traj.samples) {
    const double n = moments_from_density(s.rho, sys, ops).occupancies(0);
    const double expect = 0.4 + (n0 - 0.4) * std::exp(-0.2 * s.time);
    CHECK(std::abs(n - expect) <= 1e-4);
  }
  CHECK(traj.reliable);
}

TEST_CASE("moments from density") {
  SUBCASE("vacuum moments") {
    const auto sys = small_bipartite(0.0, 0.0, 0.0);
    const FockConfig fock{{4, 4}};
    const auto ops = FockOperators::build(fock);
    const CMat rho = thermal_density(fock, {0.0, 0.0});
    const auto m = moments_from_density(rho, sys, ops);
    CHECK((m.cov.sigma - 0.5 * Mat::Identity(4, 4)).norm() <= 1e-12);
    CHECK(m.occupancies.norm() <= 1e-12);
  }
  SUBCASE("truncated thermal occupancy converges within 1e-6 by cutoff 25") {
    SystemSpec sys;
    sys.modes = {{"b", 1.0, 0.0, 1.0}};
    sys.target_mode = 0;
    const FockConfig fock{{25}};
    const auto ops = FockOperators::build(fock);
    const CMat rho = thermal_density(fock, {1.0});
    const auto m = moments_from_density(rho, sys, ops);
    CHECK(std::abs(m.occupancies(0) - 1.0) <= 1e-6);
    CHECK(std::abs(m.cov.sigma(0, 0) - 1.5) <= 1e-6);
  }
  SUBCASE("first moments vanish in the displaced frame") {
    const auto sys = small_bipartite(0.05, 0.01, 0.7);
    const FockConfig fock{{6, 6}};
    const auto ops = FockOperators::build(fock);
    const CMat rho0 = thermal_density(fock, {0.1, 0.7});
    const auto schedule = ControlSchedule::constant(controls1({0.05, 0.02}),
                                                    periods_to_time(0.5), 4);
    const auto traj = evolve_qme(rho0, sys, schedule, periods_to_time(2.0), ops);
    const auto m = moments_from_density(traj.samples.back().rho, sys, ops);
    CHECK(m.first_moments.cwiseAbs().maxCoeff() <= 1e-10);
  }
}

TEST_CASE("central cross-check: oracle matches the moment propagator") {
  // Occupancies from the brute-force master equation and from the
  // Lyapunov-form moment dynamics must agree to 1e-3 relative over 5
  // periods. The moment run is seeded from the truncated state's actual
  // initial moments so the comparison isolates the generators.
  auto sys = small_bipartite(0.1, 1e-5, 0.5);
  const FockConfig fock{{6, 6}};
  const auto ops = FockOperators::build(fock);
  const CMat rho0 = thermal_density(fock, {0.0, 0.5});

  const double dt = periods_to_time(0.1);
  const int n_steps = 50;
  const auto schedule =
      ControlSchedule::constant(controls1({0.05, 0.0}), dt, n_steps);
  const auto traj = evolve_qme(rho0, sys, schedule, n_steps * dt, ops);
  REQUIRE(traj.samples.size() == static_cast<size_t>(n_steps + 1));
  CHECK(traj.reliable);

  CovarianceState st = moments_from_density(rho0, sys, ops).cov;
  const auto prop =
      make_propagator(build_generators(sys, controls1({0.05, 0.0})), dt);
  double worst = 0.0;
  for (int k = 1; k <= n_steps; ++k) {
    st = apply(prop, st);
    const auto oracle = moments_from_density(traj.samples[k].rho, sys, ops);
    for (int j = 0; j < 2; ++j) {
      const double err = std::abs(occupancy(st, j) - oracle.occupancies(j)) /
                         (std::abs(oracle.occupancies(j)) + 1e-6);
      worst = std::max(worst, err);
    }
  }
  CHECK(worst <= 1e-3);
}

TEST_CASE("cross-check holds for a random complex-control schedule") {
  auto sys = small_bipartite(0.08, 2e-4, 0.4);
  sys.modes[0].frequency = 1.3;  // detuned magnon
  const FockConfig fock{{8, 8}};
  const auto ops = FockOperators::build(fock);
  const CMat rho0 = thermal_density(fock, {0.1, 0.4});

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-0.15, 0.15);
  const double dt = periods_to_time(0.25);
  const int n_steps = 12;
  ControlSchedule schedule;
  schedule.dt = dt;
  schedule.values.resize(1, n_steps);
  for (int k = 0; k < n_steps; ++k)
    schedule.values(0, k) = Complex(u(rng), u(rng));

  const auto traj = evolve_qme(rho0, sys, schedule, n_steps * dt, ops);
  CHECK(traj.reliable);

  CovarianceState st = moments_from_density(rho0, sys, ops).cov;
  double worst = 0.0;
  for (int k = 0; k < n_steps; ++k) {
    st = propagate(st, build_generators(sys, schedule.at_step(k)), dt);
    const auto oracle = moments_from_density(traj.samples[k + 1].rho, sys, ops);
    // every second moment, not just the occupancies
    worst = std::max(worst, (st.sigma - oracle.cov.sigma).cwiseAbs().maxCoeff() /
                                oracle.cov.sigma.cwiseAbs().maxCoeff());
  }
  CHECK(worst <= 1e-3);
}
