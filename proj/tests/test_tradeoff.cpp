#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stqrf/tradeoff.hpp"

using namespace stqrf;

TEST_CASE("product trade-off holds with slack >= 1") {
  PhysicalParams pp;
  for (double lam : {0.02, 0.1}) {
    const auto clock = make_qubit_clock(2.0 * lam * pp.rest_energy());
    const auto st = make_gaussian_phase_space(pp, make_grid(0.0, 0.525 * pp.hbar, 1024),
                                              clock, 1.0, 0.0, 0.0);
    const auto rep = tradeoff_check(st, 1.0);
    CHECK(rep.slack >= 1.0 - 1e-9);
    CHECK(rep.lhs == doctest::Approx(rep.slack * rep.rhs).epsilon(1e-12));
  }
}

TEST_CASE("trade-off rejects correlated states") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  const double sp = 0.5 * pp.hbar * std::sqrt(5.0);
  const auto st = make_contractive(pp, make_grid(0.0, 1.05 * sp, 2048), clock, 1.0, 1.0);
  CHECK_THROWS_AS(tradeoff_check(st, 1.0), SymmetryViolation);
}

TEST_CASE("dimensionless pairs approach 1 in the rest frame") {
  PhysicalParams pp;
  const double lam = 0.01;
  const auto clock = make_qubit_clock(2.0 * lam * pp.rest_energy());
  // var_p at the lambda^2 scale keeps the kinetic correction at the same
  // order as the internal-energy one, so both deviations are O(lambda^2).
  const double var_p = lam * lam * pp.m * pp.m * pp.c * pp.c;
  const auto g = gaussian_family_pair(pp, clock, var_p, 0.2, 1.0);
  const auto m = mus_family_pair(pp, clock, var_p, 0.2, 1.0);
  CHECK(std::abs(g.dt2_tilde - 1.0) < 5 * lam * lam);
  CHECK(std::abs(g.dx2_tilde - 1.0) < 5 * lam * lam);
  CHECK(std::abs(m.dt2_tilde - 1.0) < 5 * lam * lam);
  CHECK(std::abs(m.dx2_tilde - 1.0) < 5 * lam * lam);
}

TEST_CASE("rest-frame residual shrinks with lambda") {
  PhysicalParams pp;
  auto residual = [&](double lam) {
    // Equal weights with levels {0, gap}: the quadratic pieces of the two
    // family gaps cancel only at w = 1/2, leaving a clean cubic residual;
    // shifting the mean level off zero keeps the odd third moment nonzero.
    DiscreteClockSpec clock;
    const double gap = 2.0 * lam * pp.rest_energy();
    const double w = std::sqrt(0.5);
    clock.levels = {{0.0, w}, {gap, w}};
    const double var_p = lam * lam * pp.m * pp.m * pp.c * pp.c;
    return rest_frame_tradeoff(gaussian_family_pair(pp, clock, var_p, 0.2, 1.0),
                               mus_family_pair(pp, clock, var_p, 0.2, 1.0));
  };
  const double r1 = residual(0.02), r2 = residual(0.08);
  // lambda^3 scaling: a factor 4 in lambda gives ~64x in the residual.
  CHECK(r2 / r1 > 30.0);
  CHECK(r2 / r1 < 130.0);
}

TEST_CASE("kinematical trade-off at nonzero mean momentum") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  const double p0 = 0.5;
  const auto st = make_gaussian_phase_space(pp, make_grid(p0, 0.525 * pp.hbar, 2048), clock,
                                            1.0, p0, 0.0);
  const auto rep = kinematical_tradeoff(st, 1.0, 0.2);
  CHECK(rep.holds);
  CHECK(rep.lhs >= rep.rhs);
  CHECK(rep.spatial_term > 0.0);
}

TEST_CASE("contractive diagnostics") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  const double sigma = 1.0, gamma = 2.0;
  const double sp = 0.5 * pp.hbar / sigma * std::sqrt(1.0 + 4.0 * gamma * gamma);
  const auto st = make_contractive(pp, make_grid(0.0, 1.05 * sp, 4096), clock, sigma, gamma);
  const auto d = contractive_diagnostics(st);
  CHECK(d.cov_xv < 0.0);
  CHECK(d.window_tau_c > 0.0);
  CHECK(d.window_tau_c == doctest::Approx(-d.cov_xv / compute_moments(st).var_v).epsilon(1e-9));
  const auto cm = clock_moments(st);
  CHECK(d.two_time_coeff == doctest::Approx(0.5 * pp.hbar * cm.inv_mass).epsilon(1e-12));
  // Expanded coefficient agrees to O(lambda^4) ~ 1e-5 at gap = 0.1 m c^2.
  CHECK(d.two_time_coeff_expanded == doctest::Approx(d.two_time_coeff).epsilon(1e-5));
}
