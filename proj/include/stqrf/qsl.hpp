#pragma once
// Quantum speed limits for the internal clock: the pure-state bound, the
// trace-norm coherence functional, the dephasing functional weighted by the
// time dilation factor, and static/dynamical distance-threshold bounds.
//
// Convention: delta is the plain trace norm ||rho(t) - rho(0)||_1 (no 1/2),
// so delta ranges over (0, 2). All bounds below are normalized consistently
// with that convention; for a pure qubit the static bound at threshold delta
// is delta*hbar/(2*Delta H_c) in the c -> infinity limit.

#include <vector>

#include "stqrf/oracle.hpp"

namespace stqrf {

enum class QslKind { mt_pure, mixed_trace, dephasing_static, dephasing_dynamical };

struct QslResult {
  double delta = 0.0;
  double f_value = 0.0;     // functional F (energy units); S for the dynamical kind
  double bound_time = 0.0;
  double oracle_time = 0.0; // threshold_time under the exact Hamiltonian
  QslKind kind = QslKind::dephasing_static;
};

struct StaticDynamicSplit {
  double S = 0.0;  // static:    sum |d_eps| |rho_ij| (1 - <p^2_ij>/2m^2c^2)
  double D = 0.0;  // dynamical: sum |d_eps| |rho_ij| Var_ij(p^2) (d_eps/2 hbar m^2 c^2)^2
};

// pi hbar / (2 sqrt(var_Hc)).
double mt_bound_pure(double var_Hc, double hbar);

struct CoherenceFunctional {
  double f = 0.0;         // ||[rho, H_c]||_1
  double majorant = 0.0;  // sum_{i!=j} |eps_j - eps_i| |rho_ij|
};
CoherenceFunctional coherence_functional_unitary(const ClockReducedState& rho,
                                                 const DiscreteClockSpec& clock);

// Momentum-resolved quadrature of Delta(p) ||[<p|rho|p>, H_c]||_1 with
// Delta(p) = 1 - p^2/2m^2c^2 (first-order dilation factor).
double dephasing_functional(const CompositeState& st);

// Same functional from the factorized form: sum over level pairs of
// |d_eps| |rho_ij(0)| |<Delta(p)>_ij| with cross-averages taken against the
// overlap density psi_i psi_j^*.
double dephasing_functional_closed(const CompositeState& st);

QslResult static_qsl(const CompositeState& st, double delta, bool attach_oracle = true);
QslResult dynamical_qsl(const CompositeState& st, double delta, bool attach_oracle = true);
StaticDynamicSplit static_dynamic_split(const CompositeState& st);

// Family-resolved closed forms for a symmetric qubit clock (exact Gaussian
// overlaps, no lambda-expansion), mirroring the quadrature pipeline above.
double qubit_static_bound_gaussian(const PhysicalParams& pp, double gap, double sigma,
                                   double p0, double delta);
double qubit_static_bound_mus(const PhysicalParams& pp, double gap, double Omega,
                              double v0, double delta);
double qubit_dynamical_bound_gaussian(const PhysicalParams& pp, double gap, double sigma,
                                      double p0, double delta);
double qubit_dynamical_bound_mus(const PhysicalParams& pp, double gap, double Omega,
                                 double v0, double delta);

// Short-time prediction of the off-diagonal decay,
// |rho_ij(t)| = |rho_ij(0)| [1 - 1/2 (t d_eps / (2 hbar m m c^2))^2 Var_ij(p^2)].
struct CoherenceDecayEntry {
  int i = 0, j = 0;
  double abs_rho0 = 0.0;
  double abs_rho_t = 0.0;
};
std::vector<CoherenceDecayEntry> coherence_decay_prediction(const CompositeState& st, double t);

// Cross-distribution moments of the pair (i, j): the density psi_i psi_j^*
// normalized by its integral. mean2 = <p^2>_ij, var2 = Var_ij(p^2).
struct CrossMoments {
  cplx overlap;   // rho_ij(0)
  double mean2 = 0.0;
  double var2 = 0.0;
};
CrossMoments cross_moments(const CompositeState& st, int i, int j);

}  // namespace stqrf
