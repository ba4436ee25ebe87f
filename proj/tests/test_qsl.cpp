#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stqrf/qsl.hpp"
#include "stqrf/sampler.hpp"

using namespace stqrf;

namespace {
CompositeState sample_gaussian(const PhysicalParams& pp, double lam, double sigma, double p0) {
  const auto clock = make_qubit_clock(2.0 * lam * pp.rest_energy());
  return make_gaussian_phase_space(pp, make_grid(p0, 0.525 * pp.hbar / sigma, 2048), clock,
                                   sigma, p0, 0.0);
}
}  // namespace

TEST_CASE("pure-state bound value") {
  CHECK(mt_bound_pure(4.0, 1.0) == doctest::Approx(M_PI / 4.0).epsilon(1e-14));
}

TEST_CASE("qubit commutator norm saturates the majorant") {
  PhysicalParams pp;
  const auto st = sample_gaussian(pp, 0.05, 1.0, 0.0);
  const auto rho = reduce_clock(st);
  const auto cf = coherence_functional_unitary(rho, st.discrete());
  CHECK(cf.f == doctest::Approx(cf.majorant).epsilon(1e-10));
}

TEST_CASE("dephasing functional: quadrature equals factorized form") {
  PhysicalParams pp;
  for (double p0 : {0.0, 0.4}) {
    const auto st = sample_gaussian(pp, 0.05, 1.0, p0);
    CHECK(dephasing_functional(st) ==
          doctest::Approx(dephasing_functional_closed(st)).epsilon(1e-9));
  }
}

TEST_CASE("cross moments of a shared gaussian packet") {
  PhysicalParams pp;
  const double sigma = 0.8, p0 = 0.5;
  const auto st = sample_gaussian(pp, 0.05, sigma, p0);
  const auto cm = cross_moments(st, 0, 1);
  const double dp2 = 0.25 * pp.hbar * pp.hbar / (sigma * sigma);
  CHECK(std::abs(cm.overlap) == doctest::Approx(0.5).epsilon(1e-10));
  CHECK(cm.mean2 == doctest::Approx(dp2 + p0 * p0).epsilon(1e-10));
  CHECK(cm.var2 == doctest::Approx(2 * dp2 * (dp2 + 2 * p0 * p0)).epsilon(1e-9));
}

TEST_CASE("closed qubit bounds match the quadrature pipeline") {
  PhysicalParams pp;
  const double lam = 0.05, gap = 2.0 * lam * pp.rest_energy(), delta = 0.3;
  const double sigma = 1.2, p0 = 0.3;
  const auto stg = sample_gaussian(pp, lam, sigma, p0);
  CHECK(qubit_static_bound_gaussian(pp, gap, sigma, p0, delta) ==
        doctest::Approx(static_qsl(stg, delta, false).bound_time).epsilon(1e-9));
  CHECK(qubit_dynamical_bound_gaussian(pp, gap, sigma, p0, delta) ==
        doctest::Approx(dynamical_qsl(stg, delta, false).bound_time).epsilon(1e-9));

  const double Omega = 0.6, v0 = 0.2;
  const auto clock = make_qubit_clock(gap);
  const double sp = std::sqrt(0.5 * pp.m * pp.hbar * Omega);
  const auto stm = make_mus_configuration_space(pp, make_grid(pp.m * v0, 1.1 * sp, 2048),
                                                clock, Omega, v0, 0.0);
  CHECK(qubit_static_bound_mus(pp, gap, Omega, v0, delta) ==
        doctest::Approx(static_qsl(stm, delta, false).bound_time).epsilon(1e-9));
  CHECK(qubit_dynamical_bound_mus(pp, gap, Omega, v0, delta) ==
        doctest::Approx(dynamical_qsl(stm, delta, false).bound_time).epsilon(1e-9));
}

TEST_CASE("bound ordering against the oracle") {
  PhysicalParams pp;
  StateSampler sampler(7);
  for (int i = 0; i < 10; ++i) {
    const auto st = sampler.sample(pp);
    const auto s = static_qsl(st, 0.2, false);
    const auto d = dynamical_qsl(st, 0.2, true);
    CHECK(s.bound_time <= d.bound_time * (1 + 1e-12));
    CHECK(d.bound_time <= d.oracle_time * (1 + 1e-8));
  }
}

TEST_CASE("short-time coherence decay prediction") {
  PhysicalParams pp;
  const auto st = sample_gaussian(pp, 0.05, 1.0, 0.2);
  const auto cm = cross_moments(st, 0, 1);
  const double gap = 2.0 * 0.05 * pp.rest_energy();
  const double kpred = 0.5 * std::pow(gap / (2.0 * pp.hbar * pp.m * pp.rest_energy()), 2) *
                       cm.var2;
  const double t = std::sqrt(1e-4 / kpred);
  const auto pred = coherence_decay_prediction(st, t);
  const auto rho_t = reduce_clock(evolve(st, t, HamiltonianOrder::exact));
  // Prediction reproduces the evolved overlap magnitude to sub-percent of the drop.
  const double drop_pred = 1.0 - pred[0].abs_rho_t / pred[0].abs_rho0;
  const double drop_meas = 1.0 - std::abs(rho_t.at(pred[0].i, pred[0].j)) / pred[0].abs_rho0;
  CHECK(drop_pred == doctest::Approx(drop_meas).epsilon(0.02));
}
