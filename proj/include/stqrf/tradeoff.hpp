#pragma once
// Space-time trade-off relations: the headline product inequality, the
// rest-frame equality between the Gaussian and MUS families in dimensionless
// units, the kinematical trade-off at p0 != 0, and contractive-state
// diagnostics.

#include "stqrf/qsl.hpp"
#include "stqrf/spatial.hpp"

namespace stqrf {

struct TradeoffReport {
  double lhs = 0.0;    // Delta x(t) * t_perp
  double rhs = 0.0;    // (pi/2) sqrt(hbar|t|/mbar) * hbar/(m c^2)
  double slack = 0.0;  // lhs / rhs
};

// lhs uses the oracle Delta x(t) and the pure-state bound
// t_perp = pi hbar / (2 Delta H_c). Requires a symmetric state.
TradeoffReport tradeoff_check(const CompositeState& st, double t);

struct DimensionlessPair {
  // Normalized so both tend to 1 in the rest frame as lambda -> 0:
  double dt2_tilde = 0.0;  // (2 Delta H_c / delta hbar)^2 * t_delta,min^2
  double dx2_tilde = 0.0;  // (mbar / hbar|t|) * var_x(t)_min
};

// Family pairs at matched (var_Hc, var_p, delta), p0 = 0, computed from the
// exact (unexpanded) family minima so the residual retains its lambda^3 scale.
DimensionlessPair gaussian_family_pair(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                                       double var_p, double delta, double t);
DimensionlessPair mus_family_pair(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                                  double var_p, double delta, double t);

// | (dt2_G + dx2_G) - (dt2_M + dx2_M) |, expected O(lambda^3).
double rest_frame_tradeoff(const DimensionlessPair& g, const DimensionlessPair& m);

struct KinematicalReport {
  double lhs = 0.0;  // Delta x(t) * t_delta   (both from the oracle)
  double rhs = 0.0;  // (hbar delta / m c) * |p0 t| / (m c)
  bool holds = false;
  double spatial_term = 0.0;   // family-resolved kinematical variance share
  double temporal_term = 0.0;
};
KinematicalReport kinematical_tradeoff(const CompositeState& st, double t, double delta);

struct ContractiveDiagnostics {
  double cov_xv = 0.0;
  double window_tau_c = 0.0;   // |Cov(x,v)|/var_v when Cov < 0, else 0
  // Two-time product bound Delta x(t) Delta x(0) >= (hbar|t|/2) <m^-1>,
  // reported as the bound on the product of standard deviations at t = 1.
  double two_time_coeff = 0.0;          // (hbar/2) <m^-1>
  double two_time_coeff_expanded = 0.0; // (hbar/2 mbar)(1 + var_Hc/m^2c^4)
};
ContractiveDiagnostics contractive_diagnostics(const CompositeState& st);

}  // namespace stqrf
