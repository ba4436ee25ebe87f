#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stqrf/oracle.hpp"
#include "stqrf/state.hpp"

using namespace stqrf;

TEST_CASE("qubit clock moments") {
  PhysicalParams pp;
  const double gap = 2.0;
  const auto cm = clock_moments(make_qubit_clock(gap), pp);
  CHECK(cm.mean_Hc == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(cm.var_Hc == doctest::Approx(gap * gap / 4.0));
  const double c2 = pp.c * pp.c;
  const double ref = 0.5 / (pp.m - 0.5 * gap / c2) + 0.5 / (pp.m + 0.5 * gap / c2);
  CHECK(cm.inv_mass == doctest::Approx(ref).epsilon(1e-14));
  CHECK(cm.mbar == doctest::Approx(pp.m));
  CHECK(cm.lambda == doctest::Approx(0.5 * gap / pp.rest_energy()));
}

TEST_CASE("gaussian family construction moments") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.2 * pp.rest_energy());
  const double sigma = 0.7, p0 = 0.4, x0 = -1.3;
  const auto st = make_gaussian_phase_space(pp, make_grid(p0, 0.525 * pp.hbar / sigma, 1024),
                                            clock, sigma, p0, x0);
  CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-10));
  const auto m = compute_moments(st);
  CHECK(m.mean_x == doctest::Approx(x0).epsilon(1e-9));
  CHECK(m.mean_p == doctest::Approx(p0).epsilon(1e-10));
  CHECK(m.var_x == doctest::Approx(sigma * sigma).epsilon(1e-9));
  CHECK(m.var_p == doctest::Approx(0.25 / (sigma * sigma)).epsilon(1e-10));
  CHECK(std::abs(m.cov_xp) < 1e-9);
}

TEST_CASE("MUS branch structure") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.2 * pp.rest_energy());
  const double Omega = 0.8, v0 = 0.3;
  const double sp = std::sqrt(0.5 * pp.m * pp.hbar * Omega);
  const auto st = make_mus_configuration_space(pp, make_grid(pp.m * v0, 1.1 * sp, 1024),
                                               clock, Omega, v0, 0.0);
  CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-10));
  // Per-branch momentum mean m_b v0, variance m_b hbar Omega / 2.
  for (int b = 0; b < 2; ++b) {
    double n = 0, s1 = 0, s2 = 0;
    for (int k = 0; k < st.grid.n_points; ++k) {
      const double w = std::norm(st.branch(b)[k]);
      n += w;
      s1 += w * st.grid.p(k);
      s2 += w * st.grid.p(k) * st.grid.p(k);
    }
    const double mb = st.branch_mass(b);
    CHECK(s1 / n == doctest::Approx(mb * v0).epsilon(1e-9));
    CHECK(s2 / n - (s1 / n) * (s1 / n) ==
          doctest::Approx(0.5 * mb * pp.hbar * Omega).epsilon(1e-9));
  }
}

TEST_CASE("contractive correlation") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  const double sigma = 1.0, gamma = 1.5;
  const double sp = 0.5 * pp.hbar / sigma * std::sqrt(1.0 + 4.0 * gamma * gamma);
  const auto st = make_contractive(pp, make_grid(0.0, 1.05 * sp, 2048), clock, sigma, gamma);
  const auto m = compute_moments(st);
  CHECK(m.var_x == doctest::Approx(sigma * sigma).epsilon(1e-8));
  CHECK(m.var_p == doctest::Approx(0.25 * pp.hbar * pp.hbar * (1 + 4 * gamma * gamma) /
                                   (sigma * sigma))
                       .epsilon(1e-8));
  CHECK(m.cov_xp == doctest::Approx(-pp.hbar * gamma).epsilon(1e-8));
}

TEST_CASE("ideal clock state") {
  PhysicalParams pp;
  const double sH = 0.02 * pp.rest_energy();
  const auto clock = make_ideal_clock(0.5, sH, 64);
  IdealComParams fp;
  fp.sigma = 1.0;
  const auto st = make_ideal_clock_state(pp, make_grid(0.0, 0.525 * pp.hbar, 256), clock,
                                         "gaussian", fp);
  CHECK(st.norm_squared() == doctest::Approx(1.0).epsilon(1e-9));
  const auto cm = clock_moments(st);
  CHECK(cm.mean_Hc == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(cm.var_Hc == doctest::Approx(sH * sH).epsilon(1e-8));
}

TEST_CASE("construction guards") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  // Box far too narrow for the packet.
  MomentumGrid tight;
  tight.p_min = -1.0;
  tight.p_max = 1.0;
  tight.n_points = 128;
  CHECK_THROWS_AS(make_gaussian_phase_space(pp, tight, clock, 0.1, 0.0, 0.0), GridOverflow);
  // Internal-energy scale beyond the trusted regime.
  const auto hot = make_qubit_clock(0.5 * pp.rest_energy());
  CHECK_THROWS_AS(
      make_gaussian_phase_space(pp, make_grid(0.0, 0.525 * pp.hbar, 1024), hot, 1.0, 0.0, 0.0),
      RegimeViolation);
}
