#include "stqrf/sampler.hpp"

#include <cmath>

namespace stqrf {

CompositeState StateSampler::sample(const PhysicalParams& pp) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  const double lam =
      std::min(kLambdaMax * (1.0 - 1e-12),
               cons_.lambda_min * std::pow(cons_.lambda_max / cons_.lambda_min, uni(rng_)));
  const double w = 0.1 + 0.8 * uni(rng_);  // qubit mixing weight
  // Delta H = gap * sqrt(w(1-w)); pick the gap to realize the drawn lambda.
  const double gap = lam * pp.rest_energy() / std::sqrt(w * (1.0 - w));
  const DiscreteClockSpec clock = make_qubit_clock(gap, w);

  const double width = cons_.width_min *
                       std::pow(cons_.width_max / cons_.width_min, uni(rng_));
  double p0 = 0.0;
  if (cons_.p0_max > 0.0) p0 = cons_.p0_max * (2.0 * uni(rng_) - 1.0);

  bool use_mus = cons_.include_mus;
  if (cons_.include_mus && cons_.include_gaussian) use_mus = uni(rng_) < 0.5;

  if (use_mus) {
    const double Omega = pp.hbar / (2.0 * pp.m * width * width);
    const double sp = std::sqrt(0.5 * pp.m * pp.hbar * Omega) * 1.1;
    const MomentumGrid grid = make_grid(p0, sp, cons_.n_points);
    return make_mus_configuration_space(pp, grid, clock, Omega, p0 / pp.m, 0.0);
  }
  const double sp = 0.5 * pp.hbar / width;
  const MomentumGrid grid = make_grid(p0, 1.05 * sp, cons_.n_points);
  return make_gaussian_phase_space(pp, grid, clock, width, p0, 0.0);
}

}  // namespace stqrf
