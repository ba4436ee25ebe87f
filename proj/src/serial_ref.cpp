#include "stqrf/serial_ref.hpp"

#include <cmath>
#include <vector>

namespace stqrf::serial {

namespace {

void deriv4(const cplx* f, int n, double h, int s, cplx* out) {
  const double inv = 1.0 / (12.0 * s * h);
  auto at = [&](int k) -> cplx { return (k < 0 || k >= n) ? cplx(0.0) : f[k]; };
  for (int k = 0; k < n; ++k)
    out[k] = (8.0 * (at(k + s) - at(k - s)) - (at(k + 2 * s) - at(k - 2 * s))) * inv;
}

}  // namespace

CompositeState evolve(const CompositeState& st, double t, HamiltonianOrder order) {
  CompositeState out = st;
  const int nb = st.n_branches(), n = st.grid.n_points;
  const double h = st.params.hbar;
  for (int b = 0; b < nb; ++b) {
    const double eps = st.branch_energy(b);
    const cplx* f = st.branch(b);
    cplx* g = out.branch(b);
    for (int k = 0; k < n; ++k) {
      const double ph = -dispersion(st.params, st.grid.p(k), eps, order) * t / h;
      g[k] = f[k] * cplx(std::cos(ph), std::sin(ph));
    }
  }
  return out;
}

MomentReport compute_moments(const CompositeState& st0, double t, HamiltonianOrder order) {
  const CompositeState st = (t == 0.0) ? st0 : serial::evolve(st0, t, order);
  const int nb = st.n_branches(), n = st.grid.n_points;
  const double h = st.params.hbar, dp = st.grid.dp();

  MomentReport r;
  r.t = t;
  double norm = 0, sx = 0, sx2 = 0, sp = 0, sp2 = 0, sv = 0, sv2 = 0, sxv = 0, sxp = 0;
  double se = 0, se2 = 0, noise2 = 0, dmag2 = 0;
  std::vector<cplx> d1(n), d2(n);

  for (int b = 0; b < nb; ++b) {
    const double eps = st.branch_energy(b);
    const double slope = group_velocity(st.params, 1.0, eps, order);
    const cplx* f = st.branch(b);
    deriv4(f, n, dp, 1, d1.data());
    deriv4(f, n, dp, 2, d2.data());
    for (int k = 0; k < n; ++k) {
      const double p = st.grid.p(k);
      const double v = group_velocity(st.params, p, eps, order);
      const cplx fk = f[k];
      const cplx d = (16.0 * d1[k] - d2[k]) / 15.0;
      const cplx xf = cplx(0.0, h) * d;
      noise2 += std::norm(d - d1[k]);
      dmag2 += std::norm(d);
      norm += std::norm(fk);
      sp += p * std::norm(fk);
      sp2 += p * p * std::norm(fk);
      sv += v * std::norm(fk);
      sv2 += v * v * std::norm(fk);
      se += eps * std::norm(fk);
      se2 += eps * eps * std::norm(fk);
      sx += (std::conj(fk) * xf).real();
      sx2 += std::norm(xf);
      sxv += (std::conj(fk) * (v * xf + cplx(0.0, 0.5 * h * slope) * fk)).real();
      sxp += (std::conj(fk) * (p * xf + cplx(0.0, 0.5 * h) * fk)).real();
    }
  }

  if (dmag2 > 0.0 && std::sqrt(noise2 / dmag2) > 1e-6)
    throw DerivativeNoise("serial: finite-difference stencils disagree");

  r.norm = norm * st.branch_measure() * dp;
  const double inv = 1.0 / norm;
  r.mean_p = sp * inv;
  r.var_p = sp2 * inv - r.mean_p * r.mean_p;
  r.mean_v = sv * inv;
  r.var_v = sv2 * inv - r.mean_v * r.mean_v;
  r.mean_x = sx * inv;
  r.var_x = sx2 * inv - r.mean_x * r.mean_x;
  r.cov_xv = sxv * inv - r.mean_x * r.mean_v;
  r.cov_xp = sxp * inv - r.mean_x * r.mean_p;
  r.mean_Hc = se * inv;
  r.var_Hc = se2 * inv - r.mean_Hc * r.mean_Hc;
  const ClockMoments cm = clock_moments(st);
  r.mbar = cm.mbar;
  r.lambda = cm.lambda;
  return r;
}

}  // namespace stqrf::serial
