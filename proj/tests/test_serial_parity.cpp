#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "stqrf/sampler.hpp"
#include "stqrf/serial_ref.hpp"

using namespace stqrf;

TEST_CASE("parallel and serial kernels agree") {
  PhysicalParams pp;
  StateSampler sampler(42);
  for (int i = 0; i < 6; ++i) {
    const auto st = sampler.sample(pp);
    const double t = 0.05 * (i + 1);
    const auto a = evolve(st, t, HamiltonianOrder::exact);
    const auto b = serial::evolve(st, t, HamiltonianOrder::exact);
    double diff = 0.0;
    for (std::size_t k = 0; k < a.amp.size(); ++k) diff += std::norm(a.amp[k] - b.amp[k]);
    CHECK(std::sqrt(diff) < 1e-13);

    const auto mp = compute_moments(st, t);
    const auto ms = serial::compute_moments(st, t);
    CHECK(mp.mean_x == doctest::Approx(ms.mean_x).epsilon(1e-12));
    CHECK(mp.var_x == doctest::Approx(ms.var_x).epsilon(1e-12));
    CHECK(mp.mean_v == doctest::Approx(ms.mean_v).epsilon(1e-12));
    CHECK(mp.var_v == doctest::Approx(ms.var_v).epsilon(1e-12));
    CHECK(mp.cov_xv == doctest::Approx(ms.cov_xv).epsilon(1e-10));
    CHECK(mp.var_p == doctest::Approx(ms.var_p).epsilon(1e-12));
  }
}

TEST_CASE("serial parity for an ideal-clock state") {
  PhysicalParams pp;
  const auto clock = make_ideal_clock(0.0, 0.02 * pp.rest_energy(), 48);
  IdealComParams fp;
  fp.sigma = 1.0;
  const auto st = make_ideal_clock_state(pp, make_grid(0.0, 0.525 * pp.hbar, 512), clock,
                                         "gaussian", fp);
  const auto mp = compute_moments(st, 0.4);
  const auto ms = serial::compute_moments(st, 0.4);
  CHECK(mp.var_x == doctest::Approx(ms.var_x).epsilon(1e-12));
  CHECK(mp.var_v == doctest::Approx(ms.var_v).epsilon(1e-12));
}
