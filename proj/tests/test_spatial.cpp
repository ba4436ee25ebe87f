#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stqrf/spatial.hpp"

using namespace stqrf;

TEST_CASE("bound hierarchy and expansions") {
  PhysicalParams pp;
  const double lam = 0.05, t = 2.0;
  const auto clock = make_qubit_clock(2.0 * lam * pp.rest_energy());
  const auto cm = clock_moments(clock, pp);
  const auto rep = general_min_spread(cm, pp, t);
  CHECK(rep.bound_exact == doctest::Approx(pp.hbar * t * cm.inv_mass).epsilon(1e-14));
  CHECK(rep.salecker_wigner == doctest::Approx(pp.hbar * t / pp.m).epsilon(1e-14));
  // Expanded forms agree with the exact branch sum to O(lambda^3..4).
  CHECK(std::abs(rep.bound_expanded / rep.bound_exact - 1.0) < 5 * lam * lam * lam);
  CHECK(std::abs(rep.bound_final / rep.bound_exact - 1.0) < 5 * lam * lam * lam);
  // The composite bound exceeds the bare-mass one for a symmetric clock.
  CHECK(rep.bound_exact > rep.salecker_wigner);
}

TEST_CASE("gaussian family: scan minimum matches analytic minimizer") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.2 * pp.rest_energy());
  const double t = 1.5, p0 = 0.0;
  const double s_opt = gaussian_family_optimal_sigma(pp, clock, t);
  const double v_opt = gaussian_family_spread(pp, clock, s_opt, p0, t);
  for (double f : {0.8, 0.9, 1.1, 1.25}) {
    CHECK(gaussian_family_spread(pp, clock, f * s_opt, p0, t) >= v_opt * (1.0 - 1e-12));
  }
  CHECK(gaussian_family_min(pp, clock, p0, t) == doctest::Approx(v_opt).epsilon(1e-12));
  // Expanded minimum close to exact at this lambda.
  CHECK(gaussian_family_min_expanded(pp, clock, p0, t) ==
        doctest::Approx(gaussian_family_min(pp, clock, p0, t)).epsilon(1e-3));
}

TEST_CASE("mus family minimum equals the general bound") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.15 * pp.rest_energy(), 0.35);
  const auto cm = clock_moments(clock, pp);
  const double t = 0.8;
  CHECK(mus_family_min(pp, clock, t) ==
        doctest::Approx(pp.hbar * t * cm.inv_mass).epsilon(1e-12));
  const double Om_opt = mus_family_optimal_omega(t);
  const double v_opt = mus_family_spread(pp, clock, Om_opt, t);
  CHECK(v_opt == doctest::Approx(mus_family_min(pp, clock, t)).epsilon(1e-12));
  for (double f : {0.7, 0.9, 1.2}) {
    CHECK(mus_family_spread(pp, clock, f * Om_opt, t) >= v_opt * (1 - 1e-12));
  }
}

TEST_CASE("gaussian minimum dominates the general bound") {
  PhysicalParams pp;
  for (double lam : {0.02, 0.1, 0.19}) {
    const auto clock = make_qubit_clock(2.0 * lam * pp.rest_energy());
    const auto cm = clock_moments(clock, pp);
    const double t = 1.0;
    CHECK(gaussian_family_min(pp, clock, 0.0, t) >=
          pp.hbar * t * cm.inv_mass * (1.0 - 1e-12));
  }
}

TEST_CASE("symmetry guard on correlated states") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  const double sigma = 1.0, gamma = 1.0;
  const double sp = 0.5 * pp.hbar / sigma * std::sqrt(1.0 + 4.0 * gamma * gamma);
  const auto st = make_contractive(pp, make_grid(0.0, 1.05 * sp, 2048), clock, sigma, gamma);
  CHECK_THROWS_AS(general_min_spread(st, 1.0), SymmetryViolation);
}
