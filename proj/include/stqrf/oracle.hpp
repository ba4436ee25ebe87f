#pragma once
// Brute-force reference engine: spectral time evolution (the Hamiltonian is
// diagonal in (p, eps)), moment extraction via finite-difference spectral
// derivatives, reduced clock density matrices, trace distances and
// threshold-crossing times.

#include <vector>

#include "stqrf/state.hpp"

namespace stqrf {

enum class HamiltonianOrder { exact, first_order, second_order, nonrelativistic };

// Single-branch dispersion E_b(p) for each expansion order.
// exact:    p^2/(2 m_b) + m_b c^2
// first:    p^2/2m + m c^2 + eps*(1 - p^2/2m^2c^2)
// second:   first + eps^2 p^2/(2 m^3 c^4)
// nonrel:   p^2/2m + eps          (no rest-energy phase)
double dispersion(const PhysicalParams& pp, double p, double eps, HamiltonianOrder order);

// Velocity dE/dp used for the order-matching velocity operator.
double group_velocity(const PhysicalParams& pp, double p, double eps, HamiltonianOrder order);

CompositeState evolve(const CompositeState& st, double t, HamiltonianOrder order);

struct MomentReport {
  double t = 0.0;
  double mean_x = 0.0;
  double var_x = 0.0;
  double mean_p = 0.0;
  double var_p = 0.0;
  double mean_v = 0.0;
  double var_v = 0.0;
  double cov_xv = 0.0;
  double cov_xp = 0.0;
  double mean_Hc = 0.0;
  double var_Hc = 0.0;
  double var_tau = 0.0;   // ideal clock only; 0 otherwise
  double mbar = 0.0;
  double lambda = 0.0;
  double norm = 0.0;
};

// Position moments use x = i hbar d/dp realized as a 4th-order central
// stencil, Richardson-extrapolated with the double-spacing stencil. The two
// estimates must agree to 1e-6 in relative L2 norm or DerivativeNoise is
// thrown. Velocity moments use the order-matching dE/dp branchwise;
// Cov(x,v) is the symmetrized covariance.
MomentReport compute_moments(const CompositeState& st, double t = 0.0,
                             HamiltonianOrder order = HamiltonianOrder::exact);

struct ClockReducedState {
  // Row-major N_c x N_c density matrix, rho[i*n + j] = rho_c^{ij}.
  std::vector<cplx> rho;
  int n = 0;
  cplx at(int i, int j) const { return rho[static_cast<std::size_t>(i) * n + j]; }
};

ClockReducedState reduce_clock(const CompositeState& st);

double trace_distance(const ClockReducedState& a, const ClockReducedState& b);

// Trace norm of the commutator [rho, H_c] (H_c diagonal with entries eps).
double commutator_trace_norm(const ClockReducedState& rho, const std::vector<double>& eps,
                             double scale = 1.0);

// First time at which ||rho_c(t) - rho_c(0)||_1 reaches delta (bisection to
// relative 1e-8). If delta is tangentially attained at a local maximum of the
// distance (e.g. delta = 2 for a pure qubit), the contact time is returned.
// Returns +infinity if the threshold is not reached before t_max.
double threshold_time(const CompositeState& st, double delta, HamiltonianOrder order,
                      double t_max = -1.0);

// Default search horizon: 1e3 * hbar / (internal-energy spread).
double default_t_max(const CompositeState& st);

}  // namespace stqrf
