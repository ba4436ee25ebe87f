#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stqrf/oracle.hpp"
#include "stqrf/sampler.hpp"

using namespace stqrf;

TEST_CASE("dispersion orders") {
  PhysicalParams pp;
  const double p = 0.7, eps = 0.05 * pp.rest_energy();
  const double mb = pp.m + eps / (pp.c * pp.c);
  CHECK(dispersion(pp, p, eps, HamiltonianOrder::exact) ==
        doctest::Approx(p * p / (2 * mb) + mb * pp.c * pp.c).epsilon(1e-14));
  CHECK(dispersion(pp, p, 0.0, HamiltonianOrder::nonrelativistic) ==
        doctest::Approx(p * p / (2 * pp.m)).epsilon(1e-14));
  // first order = exact up to O(eps^2), second order up to O(eps^3)
  const double ex = dispersion(pp, p, eps, HamiltonianOrder::exact);
  const double e1 = dispersion(pp, p, eps, HamiltonianOrder::first_order);
  const double e2 = dispersion(pp, p, eps, HamiltonianOrder::second_order);
  const double scale = eps / pp.rest_energy();
  CHECK(std::abs(ex - e1) < 2.0 * scale * scale * std::abs(eps));
  CHECK(std::abs(ex - e2) < 2.0 * scale * scale * scale * std::abs(eps));
  // group velocity matches a numeric dE/dp for every order
  for (auto o : {HamiltonianOrder::exact, HamiltonianOrder::first_order,
                 HamiltonianOrder::second_order, HamiltonianOrder::nonrelativistic}) {
    const double h = 1e-5;
    const double num =
        (dispersion(pp, p + h, eps, o) - dispersion(pp, p - h, eps, o)) / (2 * h);
    CHECK(group_velocity(pp, p, eps, o) == doctest::Approx(num).epsilon(1e-8));
  }
}

TEST_CASE("evolution is unitary and composable") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  const auto st = make_gaussian_phase_space(pp, make_grid(0.0, 0.525 * pp.hbar, 1024), clock,
                                            1.0, 0.0, 0.0);
  const auto a = evolve(evolve(st, 0.3, HamiltonianOrder::exact), 0.7, HamiltonianOrder::exact);
  const auto b = evolve(st, 1.0, HamiltonianOrder::exact);
  CHECK(a.norm_squared() == doctest::Approx(1.0).epsilon(1e-12));
  double diff = 0.0;
  for (std::size_t i = 0; i < a.amp.size(); ++i) diff += std::norm(a.amp[i] - b.amp[i]);
  CHECK(std::sqrt(diff) < 1e-12);
}

TEST_CASE("ballistic mean and variance law") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  const double p0 = 0.3;
  const auto st = make_gaussian_phase_space(pp, make_grid(p0, 0.525 * pp.hbar, 1024), clock,
                                            1.0, p0, 0.0);
  const auto m0 = compute_moments(st);
  const double t = 1.2;
  const auto mt = compute_moments(st, t);
  CHECK(mt.mean_x == doctest::Approx(m0.mean_x + m0.mean_v * t).epsilon(1e-9));
  CHECK(mt.var_x ==
        doctest::Approx(m0.var_x + 2 * t * m0.cov_xv + t * t * m0.var_v).epsilon(1e-9));
  CHECK(mt.var_p == doctest::Approx(m0.var_p).epsilon(1e-12));
}

TEST_CASE("reduced clock state") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy(), 0.3);
  const auto st = make_gaussian_phase_space(pp, make_grid(0.0, 0.525 * pp.hbar, 1024), clock,
                                            1.0, 0.0, 0.0);
  const auto rho = reduce_clock(st);
  CHECK(rho.n == 2);
  CHECK((rho.at(0, 0).real() + rho.at(1, 1).real()) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rho.at(0, 0).real() == doctest::Approx(0.3).epsilon(1e-10));
  CHECK(std::abs(rho.at(0, 1) - std::conj(rho.at(1, 0))) < 1e-14);
  CHECK(std::abs(rho.at(0, 1)) == doctest::Approx(std::sqrt(0.3 * 0.7)).epsilon(1e-10));
  CHECK(trace_distance(rho, rho) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("threshold time for a separable qubit") {
  PhysicalParams pp;
  const double gap = 0.1 * pp.rest_energy();
  const auto clock = make_qubit_clock(gap);
  const auto st = make_gaussian_phase_space(pp, make_grid(0.0, 0.525 * pp.hbar, 1024), clock,
                                            1.0, 0.0, 0.0);
  // Pure qubit under the internal Hamiltonian alone:
  // ||rho(t)-rho(0)||_1 = 2 sin(gap t / 2 hbar).
  const double delta = 0.5;
  const double t_ref = (2.0 * pp.hbar / gap) * std::asin(0.5 * delta);
  CHECK(threshold_time(st, delta, HamiltonianOrder::nonrelativistic) ==
        doctest::Approx(t_ref).epsilon(1e-8));
  CHECK_THROWS_AS(threshold_time(st, 2.5, HamiltonianOrder::nonrelativistic), ConfigInvalid);
}

TEST_CASE("derivative noise guard") {
  PhysicalParams pp;
  const auto clock = make_qubit_clock(0.1 * pp.rest_energy());
  // Huge x0 puts a fast phase ripple on the packet that a 1024-point grid
  // cannot differentiate cleanly.
  const auto st = make_gaussian_phase_space(pp, make_grid(0.0, 0.525 * pp.hbar, 1024), clock,
                                            1.0, 0.0, 500.0);
  CHECK_THROWS_AS(compute_moments(st), DerivativeNoise);
}
