#include "stqrf/qsl.hpp"

#include <cmath>
#include <numbers>

namespace stqrf {

double mt_bound_pure(double var_Hc, double hbar) {
  if (!(var_Hc > 0.0)) throw ZeroSpread("mt_bound_pure: zero energy spread");
  return 0.5 * std::numbers::pi * hbar / std::sqrt(var_Hc);
}

CoherenceFunctional coherence_functional_unitary(const ClockReducedState& rho,
                                                 const DiscreteClockSpec& clock) {
  CoherenceFunctional out;
  std::vector<double> eps;
  eps.reserve(clock.levels.size());
  for (const auto& lv : clock.levels) eps.push_back(lv.epsilon);
  out.f = commutator_trace_norm(rho, eps);
  const int n = rho.n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) out.majorant += std::abs(eps[j] - eps[i]) * std::abs(rho.at(i, j));
  return out;
}

namespace {

double first_order_dilation(const PhysicalParams& pp, double p) {
  return 1.0 - p * p / (2.0 * pp.m * pp.m * pp.c * pp.c);
}

void check_dilation_positive(const CompositeState& st) {
  const double edge = std::max(std::abs(st.grid.p_min), std::abs(st.grid.p_max));
  if (first_order_dilation(st.params, edge) <= 0.0)
    throw NegativeDilation("momentum box reaches p^2 >= 2 m^2 c^2");
}

}  // namespace

double dephasing_functional(const CompositeState& st) {
  check_dilation_positive(st);
  const int nb = st.n_branches(), n = st.grid.n_points;
  const double w = st.branch_measure();
  double F = 0.0;
  // At each p the conditional internal state is pure, so the commutator trace
  // norm has the rank-two closed form 2 sqrt(<H^2><1> - <H>^2).
#pragma omp parallel for schedule(static) reduction(+:F)
  for (int k = 0; k < n; ++k) {
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (int b = 0; b < nb; ++b) {
      const double a2 = std::norm(st.branch(b)[k]) * w;
      const double e = st.branch_energy(b);
      s0 += a2;
      s1 += a2 * e;
      s2 += a2 * e * e;
    }
    const double disc = std::max(0.0, s2 * s0 - s1 * s1);
    F += first_order_dilation(st.params, st.grid.p(k)) * 2.0 * std::sqrt(disc);
  }
  return F * st.grid.dp();
}

double dephasing_functional_closed(const CompositeState& st) {
  check_dilation_positive(st);
  const int nb = st.n_branches(), n = st.grid.n_points;
  const double wq = st.branch_measure() * st.grid.dp();
  double F = 0.0;
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j) {
      const cplx* fi = st.branch(i);
      const cplx* fj = st.branch(j);
      cplx J = 0.0;
      for (int k = 0; k < n; ++k)
        J += fi[k] * std::conj(fj[k]) * first_order_dilation(st.params, st.grid.p(k));
      F += 2.0 * std::abs(st.branch_energy(i) - st.branch_energy(j)) * std::abs(J) * wq;
    }
  return F;
}

CrossMoments cross_moments(const CompositeState& st, int i, int j) {
  const int n = st.grid.n_points;
  const double wq = st.branch_measure() * st.grid.dp();
  const cplx* fi = st.branch(i);
  const cplx* fj = st.branch(j);
  cplx I0 = 0.0, I2 = 0.0, I4 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double p = st.grid.p(k);
    const cplx g = fi[k] * std::conj(fj[k]);
    I0 += g;
    I2 += g * (p * p);
    I4 += g * (p * p * p * p);
  }
  CrossMoments cm;
  cm.overlap = I0 * wq;
  if (std::abs(I0) > 0.0) {
    const cplx r2 = I2 / I0;
    const cplx r4 = I4 / I0;
    cm.mean2 = r2.real();
    cm.var2 = (r4 - r2 * r2).real();
  }
  return cm;
}

StaticDynamicSplit static_dynamic_split(const CompositeState& st) {
  check_dilation_positive(st);
  StaticDynamicSplit out;
  const int nb = st.n_branches();
  const double m2c2 = st.params.m * st.params.m * st.params.c * st.params.c;
  const double h = st.params.hbar;
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      if (i == j) continue;
      const double de = std::abs(st.branch_energy(i) - st.branch_energy(j));
      const CrossMoments cm = cross_moments(st, i, j);
      const double r = std::abs(cm.overlap);
      if (r == 0.0) continue;
      out.S += de * r * std::abs(1.0 - cm.mean2 / (2.0 * m2c2));
      const double a = de / (2.0 * h * m2c2);
      out.D += de * r * cm.var2 * a * a;
    }
  return out;
}

QslResult static_qsl(const CompositeState& st, double delta, bool attach_oracle) {
  if (!(delta > 0.0 && delta < 2.0))
    throw ConfigInvalid("static_qsl: delta must lie in (0, 2)");
  QslResult r;
  r.delta = delta;
  r.kind = QslKind::dephasing_static;
  r.f_value = dephasing_functional(st);
  if (!(r.f_value > 0.0)) throw ZeroSpread("static_qsl: vanishing coherence functional");
  r.bound_time = delta * st.params.hbar / r.f_value;
  if (attach_oracle) r.oracle_time = threshold_time(st, delta, HamiltonianOrder::exact);
  return r;
}

QslResult dynamical_qsl(const CompositeState& st, double delta, bool attach_oracle) {
  if (!(delta > 0.0 && delta < 2.0))
    throw ConfigInvalid("dynamical_qsl: delta must lie in (0, 2)");
  QslResult r;
  r.delta = delta;
  r.kind = QslKind::dephasing_dynamical;
  const StaticDynamicSplit sd = static_dynamic_split(st);
  if (!(sd.S > 0.0)) throw ZeroSpread("dynamical_qsl: vanishing coherence functional");
  r.f_value = sd.S;
  const double h = st.params.hbar;
  const double corr = h * h * sd.D * delta * delta / (6.0 * sd.S * sd.S * sd.S);
  if (corr > 0.5)
    throw RegimeViolation("dynamical_qsl: cubic correction too large for the expansion");
  r.bound_time = (delta * h / sd.S) * (1.0 + corr);
  if (attach_oracle) r.oracle_time = threshold_time(st, delta, HamiltonianOrder::exact);
  return r;
}

namespace {

struct QubitCross {
  double abs_rho01 = 0.0;
  double mean2 = 0.0;
  double var2 = 0.0;
};

QubitCross qubit_cross_gaussian(const PhysicalParams& pp, double sigma, double p0) {
  QubitCross q;
  const double var_p = pp.hbar * pp.hbar / (4.0 * sigma * sigma);
  q.abs_rho01 = 0.5;
  q.mean2 = p0 * p0 + var_p;
  q.var2 = 2.0 * var_p * (var_p + 2.0 * p0 * p0);
  return q;
}

QubitCross qubit_cross_mus(const PhysicalParams& pp, double gap, double Omega, double v0) {
  QubitCross q;
  const double c2 = pp.c * pp.c;
  const double m0 = pp.m - 0.5 * gap / c2;
  const double m1 = pp.m + 0.5 * gap / c2;
  const double h = pp.hbar;
  const double s01 = m0 * m1 * h * Omega / (m0 + m1);   // cross variance scale
  const double mu01 = 2.0 * m0 * m1 * v0 / (m0 + m1);   // cross mean momentum
  q.abs_rho01 = 0.5 * std::sqrt(2.0 * std::sqrt(m0 * m1) / (m0 + m1)) *
                std::exp(-(m1 - m0) * (m1 - m0) * v0 * v0 / (2.0 * h * Omega * (m0 + m1)));
  q.mean2 = s01 + mu01 * mu01;
  q.var2 = 2.0 * s01 * s01 + 4.0 * mu01 * mu01 * s01;
  return q;
}

double qubit_bound(const PhysicalParams& pp, double gap, const QubitCross& q, double delta,
                   bool dynamical) {
  const double m2c2 = pp.m * pp.m * pp.c * pp.c;
  const double h = pp.hbar;
  const double S = 2.0 * gap * q.abs_rho01 * (1.0 - q.mean2 / (2.0 * m2c2));
  double b = delta * h / S;
  if (dynamical) {
    const double a = gap / (2.0 * h * m2c2);
    const double D = 2.0 * gap * q.abs_rho01 * q.var2 * a * a;
    b *= 1.0 + h * h * D * delta * delta / (6.0 * S * S * S);
  }
  return b;
}

}  // namespace

double qubit_static_bound_gaussian(const PhysicalParams& pp, double gap, double sigma,
                                   double p0, double delta) {
  return qubit_bound(pp, gap, qubit_cross_gaussian(pp, sigma, p0), delta, false);
}
double qubit_static_bound_mus(const PhysicalParams& pp, double gap, double Omega,
                              double v0, double delta) {
  return qubit_bound(pp, gap, qubit_cross_mus(pp, gap, Omega, v0), delta, false);
}
double qubit_dynamical_bound_gaussian(const PhysicalParams& pp, double gap, double sigma,
                                      double p0, double delta) {
  return qubit_bound(pp, gap, qubit_cross_gaussian(pp, sigma, p0), delta, true);
}
double qubit_dynamical_bound_mus(const PhysicalParams& pp, double gap, double Omega,
                                 double v0, double delta) {
  return qubit_bound(pp, gap, qubit_cross_mus(pp, gap, Omega, v0), delta, true);
}

std::vector<CoherenceDecayEntry> coherence_decay_prediction(const CompositeState& st, double t) {
  std::vector<CoherenceDecayEntry> out;
  const int nb = st.n_branches();
  const double h = st.params.hbar;
  const double mc2 = st.params.rest_energy();
  for (int i = 0; i < nb; ++i)
    for (int j = i + 1; j < nb; ++j) {
      const CrossMoments cm = cross_moments(st, i, j);
      const double de = st.branch_energy(j) - st.branch_energy(i);
      const double a = t * de / (2.0 * h * st.params.m * mc2);
      const double drop = 0.5 * a * a * cm.var2;
      if (drop > 0.5)
        throw RegimeViolation("coherence_decay_prediction: quadratic decay term exceeds 1/2");
      CoherenceDecayEntry e;
      e.i = i;
      e.j = j;
      e.abs_rho0 = std::abs(cm.overlap);
      e.abs_rho_t = e.abs_rho0 * (1.0 - drop);
      out.push_back(e);
    }
  return out;
}

}  // namespace stqrf
