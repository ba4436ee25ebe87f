#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stqrf/relational.hpp"

using namespace stqrf;

namespace {
struct Setup {
  PhysicalParams pp;
  CompositeState rod;
  SystemSpec sys;
};

// n_p must be large enough that the momentum-axis derivative stencils agree
// (the moment oracle gates on stencil disagreement below ~512 points here).
Setup make_setup(int n_eps = 64, int n_p = 512, int n_s = 64) {
  PhysicalParams pp;
  const double sH = 0.02 * pp.rest_energy();
  const auto clock = make_ideal_clock(0.0, sH, n_eps);
  IdealComParams fp;
  fp.sigma = 1.2;
  CompositeState rod = make_ideal_clock_state(
      pp, make_grid(0.0, 0.525 * pp.hbar / 1.2, n_p), clock, "gaussian", fp);
  SystemSpec sys = make_system_gaussian(1.0, make_grid(0.0, 0.525 * pp.hbar / 1.5, n_s), 1.5,
                                        0.0, 0.0, pp.hbar);
  return {pp, std::move(rod), std::move(sys)};
}
}  // namespace

TEST_CASE("dilation factors") {
  PhysicalParams pp;
  const double p = 2.0, eps = 0.05 * pp.rest_energy();
  const double c2 = pp.c * pp.c;
  CHECK(dilation_factor(pp, p, eps, HamiltonianOrder::nonrelativistic) == 1.0);
  CHECK(dilation_factor(pp, p, eps, HamiltonianOrder::first_order) ==
        doctest::Approx(1.0 - p * p / (2 * pp.m * pp.m * c2)).epsilon(1e-14));
  const double me = pp.m + eps / c2;
  CHECK(dilation_factor(pp, p, eps, HamiltonianOrder::exact) ==
        doctest::Approx(1.0 - p * p / (2 * me * me * c2)).epsilon(1e-14));
  // second order tracks exact up to the O(eps^2 p^2) remainder (~1.4e-4 here)
  const double d2 = dilation_factor(pp, p, eps, HamiltonianOrder::second_order);
  CHECK(std::abs(d2 - dilation_factor(pp, p, eps, HamiltonianOrder::exact)) < 1e-3);
  CHECK(std::abs(d2 - dilation_factor(pp, p, eps, HamiltonianOrder::first_order)) > 1e-4);
}

TEST_CASE("POVM audit: nonrelativistic resolution is exact") {
  PhysicalParams pp;
  PovmSpec spec;
  spec.p_grid = MomentumGrid{-0.3 * pp.m * pp.c, 0.3 * pp.m * pp.c, 5};
  spec.eps_min = -0.04 * pp.rest_energy();
  spec.eps_max = 0.04 * pp.rest_energy();
  spec.n_eps = 32;
  spec.order = HamiltonianOrder::nonrelativistic;
  CHECK(povm_normalization_audit(spec, pp) < 1e-10);
}

TEST_CASE("POVM audit: weighted seed beats the unweighted defect") {
  PhysicalParams pp;
  PovmSpec spec;
  spec.p_grid = MomentumGrid{-0.3 * pp.m * pp.c, 0.3 * pp.m * pp.c, 5};
  spec.eps_min = -0.04 * pp.rest_energy();
  spec.eps_max = 0.04 * pp.rest_energy();
  spec.n_eps = 128;
  spec.window_modes = 8;
  spec.order = HamiltonianOrder::first_order;
  spec.weighted_seed = true;
  const double dev_w = povm_normalization_audit(spec, pp);
  spec.weighted_seed = false;
  const double dev_u = povm_normalization_audit(spec, pp);
  const double defect = povm_unweighted_defect(spec, pp);
  CHECK(dev_w < 0.1 * defect);
  CHECK(dev_u > 0.5 * defect);
}

TEST_CASE("relational variance: operator total matches the closed form") {
  auto s = make_setup();
  const auto rep =
      relational_variance(s.rod, s.sys, 0.4, 2.0, HamiltonianOrder::nonrelativistic);
  CHECK(rep.total == doctest::Approx(rep.closed_form_total).epsilon(1e-6));
  CHECK(rep.mean == doctest::Approx(0.4).epsilon(1e-6));
  // Individual pieces are all positive and sum to the closed form.
  const double sum = rep.var_x_s + rep.var_x_r + rep.drift_term + rep.clock_term +
                     rep.relative_motion_term;
  CHECK(sum == doctest::Approx(rep.closed_form_total).epsilon(1e-12));
}

TEST_CASE("relational variance: relativistic bound chain") {
  auto s = make_setup();
  const auto rep = relational_variance(s.rod, s.sys, 0.0, 3.0, HamiltonianOrder::exact);
  const double slack = 10.0 * std::pow(rep.lambda, 3);
  CHECK(rep.total >= rep.bound_rel_rod * (1 - slack));
  CHECK(rep.total >= rep.bound_energy_spread * (1 - slack));
  CHECK(rep.total >= rep.bound_compton * (1 - slack));
}

TEST_CASE("relational minimum: order swap and Compton floor") {
  PhysicalParams pp;
  const double tau0 = 100.0 * pp.hbar / pp.rest_energy();
  const auto rm = relational_minimum(pp, tau0);
  CHECK(std::abs(rm.min_x_then_tau - rm.min_tau_then_x) < 1e-6 * rm.min_x_then_tau);
  CHECK(rm.min_x_then_tau == doctest::Approx(rm.closed_form).epsilon(0.01));
  CHECK(rm.min_x_then_tau > pp.hbar * tau0 / pp.m);  // strictly above the nonrel floor
  CHECK_THROWS_AS(relational_minimum(pp, 2.0 * pp.hbar / pp.rest_energy()), RegimeViolation);
}

TEST_CASE("nonrelativistic minimum closed form") {
  PhysicalParams pp;
  CHECK(relational_minimum_nonrel(pp, 3.0, 0.25) ==
        doctest::Approx(pp.hbar / pp.m * std::sqrt(9.0 + 0.25)).epsilon(1e-14));
}

TEST_CASE("relational trade-off") {
  auto s = make_setup();
  const auto rep = relational_tradeoff_check(s.rod, s.sys, 0.0, 2.5);
  CHECK(rep.slack >= 1.0);
  CHECK(rep.lhs >= rep.rhs);
}
