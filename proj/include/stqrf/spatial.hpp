#pragma once
// Closed-form lower bounds on the position spread of a freely evolving
// composite particle, and the family-resolved (Gaussian vs MUS) spreads and
// minimizers.

#include "stqrf/oracle.hpp"

namespace stqrf {

struct SpreadBoundReport {
  double t = 0.0;
  double bound_exact = 0.0;     // hbar|t| <m^-1>          (exact branch sums)
  double bound_expanded = 0.0;  // second-order inverse-mass expansion
  double bound_final = 0.0;     // hbar|t|/mbar + (hbar|t|/m) * var_Hc/m^2c^4
  double salecker_wigner = 0.0; // hbar|t|/m
};

// hbar |t| / m.
double salecker_wigner_bound(const PhysicalParams& pp, double t);

// Requires a phase-space-symmetric state (Cov(x,v) = 0 within tolerance).
SpreadBoundReport general_min_spread(const CompositeState& st, double t);
SpreadBoundReport general_min_spread(const ClockMoments& cm, const PhysicalParams& pp, double t);

// Phase-space Gaussian family: spread at given sigma, exact minimum over
// sigma, and the second-order expanded minimum (3/2 coefficient).
double gaussian_family_spread(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                              double sigma, double p0, double t);
double gaussian_family_min(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                           double p0, double t);
double gaussian_family_min_expanded(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                                    double p0, double t);

// Configuration-space MUS family: spread at given Omega and minimum over
// Omega (= hbar|t| <m^-1>, the general exact bound).
double mus_family_spread(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                         double Omega, double t);
double mus_family_min(const PhysicalParams& pp, const DiscreteClockSpec& clock, double t);

// Analytic minimizers (cross-checked against scans in the tests).
double gaussian_family_optimal_sigma(const PhysicalParams& pp, const DiscreteClockSpec& clock,
                                     double t);
inline double mus_family_optimal_omega(double t) { return 1.0 / std::abs(t); }

}  // namespace stqrf
