// Throughput comparison of the OpenMP evolution/moment kernels against the
// single-threaded reference implementation.
#include <chrono>
#include <cstdio>

#include <omp.h>

#include "stqrf/oracle.hpp"
#include "stqrf/serial_ref.hpp"

using clk = std::chrono::steady_clock;

template <class F>
static double time_ms(F&& f, int reps) {
  f();  // warm-up
  const auto t0 = clk::now();
  for (int i = 0; i < reps; ++i) f();
  const auto t1 = clk::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

int main() {
  using namespace stqrf;
  PhysicalParams pp;
  const IdealClockSpec clock = make_ideal_clock(0.0, 0.02 * pp.rest_energy(), 192);
  IdealComParams fp;
  fp.sigma = 1.0;
  const CompositeState st = make_ideal_clock_state(
      pp, make_grid(0.0, 0.525 * pp.hbar, 2048), clock, "gaussian", fp);

  const int reps = 5;
  const double t = 0.5;
  const double ev_omp = time_ms([&] { evolve(st, t, HamiltonianOrder::exact); }, reps);
  const double ev_ser = time_ms([&] { serial::evolve(st, t, HamiltonianOrder::exact); }, reps);
  const double mo_omp = time_ms([&] { compute_moments(st, t); }, reps);
  const double mo_ser = time_ms([&] { serial::compute_moments(st, t); }, reps);

  std::printf("threads: %d, grid: %d x %d\n", omp_get_max_threads(), st.n_branches(),
              st.grid.n_points);
  std::printf("evolve   omp %8.3f ms   serial %8.3f ms   speedup %.2fx\n", ev_omp, ev_ser,
              ev_ser / ev_omp);
  std::printf("moments  omp %8.3f ms   serial %8.3f ms   speedup %.2fx\n", mo_omp, mo_ser,
              mo_ser / mo_omp);
  return 0;
}
