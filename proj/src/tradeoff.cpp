#include "stqrf/tradeoff.hpp"

#include <cmath>
#include <numbers>

namespace stqrf {

TradeoffReport tradeoff_check(const CompositeState& st, double t) {
  const MomentReport m0 = compute_moments(st);
  const double scale = std::sqrt(std::max(m0.var_x * m0.var_v, 1e-300));
  if (std::abs(m0.cov_xv) > 1e-6 * scale)
    throw SymmetryViolation("tradeoff_check: state has Cov(x,v) != 0");
  const MomentReport mt = compute_moments(st, t);
  const ClockMoments cm = clock_moments(st);
  if (!(cm.var_Hc > 0.0)) throw ZeroSpread("tradeoff_check: zero internal-energy spread");

  TradeoffReport r;
  const double h = st.params.hbar;
  const double t_perp = 0.5 * std::numbers::pi * h / std::sqrt(cm.var_Hc);
  r.lhs = std::sqrt(mt.var_x) * t_perp;
  r.rhs = 0.5 * std::numbers::pi * std::sqrt(h * std::abs(t) / cm.mbar) * h /
          st.params.rest_energy();
  r.slack = r.lhs / r.rhs;
  return r;
}

namespace {

double dt2_from_state(const CompositeState& st, const ClockMoments& cm, double delta) {
  const QslResult q = dynamical_qsl(st, delta, /*attach_oracle=*/false);
  const double dH = std::sqrt(cm.var_Hc);
  const double s = 2.0 * dH * q.bound_time / (delta * st.params.hbar);
  return s * s;
}

}  // namespace

DimensionlessPair gaussian_family_pair(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                                       double var_p, double delta, double t) {
  (void)t;  // the dimensionless spread is t-independent at the family optimum
  const ClockMoments cm = clock_moments(clock, pp);
  DimensionlessPair out;
  out.dx2_tilde = cm.mbar * std::sqrt(cm.inv_mass2);
  const double sigma = 0.5 * pp.hbar / std::sqrt(var_p);
  const MomentumGrid grid = make_grid(0.0, 1.05 * std::sqrt(var_p), 1024);
  const CompositeState st = make_gaussian_phase_space(pp, grid, clock, sigma, 0.0, 0.0);
  out.dt2_tilde = dt2_from_state(st, cm, delta);
  return out;
}

DimensionlessPair mus_family_pair(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                                  double var_p, double delta, double t) {
  (void)t;
  const ClockMoments cm = clock_moments(clock, pp);
  DimensionlessPair out;
  out.dx2_tilde = cm.mbar * cm.inv_mass;
  // Match the momentum spread scale: branch variances m_i hbar Omega / 2.
  // Size the box for the heaviest branch, which is the widest in momentum.
  const double Omega = 2.0 * var_p / (pp.hbar * pp.m);
  double m_max = 0.0;
  for (const auto& lv : clock.levels)
    m_max = std::max(m_max, pp.m + lv.epsilon / (pp.c * pp.c));
  const MomentumGrid grid = make_grid(0.0, 1.05 * std::sqrt(var_p * m_max / pp.m), 1024);
  const CompositeState st = make_mus_configuration_space(pp, grid, clock, Omega, 0.0, 0.0);
  out.dt2_tilde = dt2_from_state(st, cm, delta);
  return out;
}

double rest_frame_tradeoff(const DimensionlessPair& g, const DimensionlessPair& m) {
  return std::abs((g.dt2_tilde + g.dx2_tilde) - (m.dt2_tilde + m.dx2_tilde));
}

KinematicalReport kinematical_tradeoff(const CompositeState& st, double t, double delta) {
  KinematicalReport r;
  const MomentReport mt = compute_moments(st, t);
  const ClockMoments cm = clock_moments(st);
  const double h = st.params.hbar;
  const double mc2 = st.params.rest_energy();
  const double s2 = cm.var_Hc / (mc2 * mc2);
  const double t_delta = threshold_time(st, delta, HamiltonianOrder::exact);

  r.lhs = std::sqrt(mt.var_x) * t_delta;
  r.rhs = 0.5 * h * delta * std::abs(mt.mean_p * t) / (st.params.m * mc2);

  const MomentReport m0 = compute_moments(st);
  if (st.meta.family == StateFamily::gaussian_phase_space) {
    // The boost penalty sits in the spatial spread.
    const double q = mt.mean_p * t / st.params.m;
    r.spatial_term = q * q * s2;
  } else if (st.meta.family == StateFamily::mus_configuration_space) {
    // The boost penalty sits in the threshold time (overlap suppression).
    const StaticDynamicSplit sd = static_dynamic_split(st);
    const double b = delta * h / sd.S;
    r.temporal_term = b * b * s2 * m0.mean_p * m0.mean_p / m0.var_p;
  }
  r.holds = r.lhs >= r.rhs * (1.0 - 1e-9);
  return r;
}

ContractiveDiagnostics contractive_diagnostics(const CompositeState& st) {
  ContractiveDiagnostics d;
  const MomentReport m0 = compute_moments(st);
  const ClockMoments cm = clock_moments(st);
  d.cov_xv = m0.cov_xv;
  d.window_tau_c = (m0.cov_xv < 0.0) ? -m0.cov_xv / m0.var_v : 0.0;
  const double h = st.params.hbar;
  const double mc2 = st.params.rest_energy();
  d.two_time_coeff = 0.5 * h * cm.inv_mass;
  d.two_time_coeff_expanded = 0.5 * h / cm.mbar * (1.0 + cm.var_Hc / (mc2 * mc2));
  return d;
}

}  // namespace stqrf
