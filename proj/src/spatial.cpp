#include "stqrf/spatial.hpp"

#include <cmath>

namespace stqrf {

double salecker_wigner_bound(const PhysicalParams& pp, double t) {
  return pp.hbar * std::abs(t) / pp.m;
}

SpreadBoundReport general_min_spread(const ClockMoments& cm, const PhysicalParams& pp,
                                     double t) {
  SpreadBoundReport r;
  r.t = t;
  const double ht = pp.hbar * std::abs(t);
  const double mc2 = pp.rest_energy();
  const double mu = cm.mean_Hc / mc2;
  const double s2 = cm.var_Hc / (mc2 * mc2);
  r.bound_exact = ht * cm.inv_mass;
  r.bound_expanded = (ht / pp.m) * (1.0 - mu + mu * mu + s2);
  r.bound_final = ht / cm.mbar + (ht / pp.m) * s2;
  r.salecker_wigner = ht / pp.m;
  return r;
}

SpreadBoundReport general_min_spread(const CompositeState& st, double t) {
  const MomentReport mr = compute_moments(st);
  const double scale = std::sqrt(std::max(mr.var_x * mr.var_v, 1e-300));
  if (std::abs(mr.cov_xv) > 1e-6 * scale)
    throw SymmetryViolation("general_min_spread: state has Cov(x,v) != 0");
  return general_min_spread(clock_moments(st), st.params, t);
}

double gaussian_family_spread(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                              double sigma, double p0, double t) {
  const ClockMoments cm = clock_moments(clock, pp);
  const double h = pp.hbar;
  return sigma * sigma + (h * h * t * t / (4.0 * sigma * sigma)) * cm.inv_mass2 +
         p0 * p0 * t * t * cm.var_inv_mass();
}

double gaussian_family_optimal_sigma(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                                     double t) {
  const ClockMoments cm = clock_moments(clock, pp);
  return std::sqrt(0.5 * pp.hbar * std::abs(t) * std::sqrt(cm.inv_mass2));
}

double gaussian_family_min(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                           double p0, double t) {
  const ClockMoments cm = clock_moments(clock, pp);
  return pp.hbar * std::abs(t) * std::sqrt(cm.inv_mass2) +
         p0 * p0 * t * t * cm.var_inv_mass();
}

double gaussian_family_min_expanded(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                                    double p0, double t) {
  const ClockMoments cm = clock_moments(clock, pp);
  const double mc2 = pp.rest_energy();
  const double s2 = cm.var_Hc / (mc2 * mc2);
  return pp.hbar * std::abs(t) / cm.mbar + 1.5 * (pp.hbar * std::abs(t) / pp.m) * s2 +
         (p0 * t / pp.m) * (p0 * t / pp.m) * s2;
}

double mus_family_spread(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                         double Omega, double t) {
  const ClockMoments cm = clock_moments(clock, pp);
  return 0.5 * pp.hbar * (1.0 + Omega * Omega * t * t) / Omega * cm.inv_mass;
}

double mus_family_min(const PhysicalParams& pp, const DiscreteClockSpec& clock, double t) {
  const ClockMoments cm = clock_moments(clock, pp);
  return pp.hbar * std::abs(t) * cm.inv_mass;
}

}  // namespace stqrf
