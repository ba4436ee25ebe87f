#include "stqrf/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace stqrf {

double dispersion(const PhysicalParams& pp, double p, double eps, HamiltonianOrder order) {
  const double m = pp.m, c2 = pp.c * pp.c;
  switch (order) {
    case HamiltonianOrder::exact: {
      const double mb = m + eps / c2;
      return p * p / (2.0 * mb) + mb * c2;
    }
    case HamiltonianOrder::first_order:
      return p * p / (2.0 * m) + m * c2 + eps * (1.0 - p * p / (2.0 * m * m * c2));
    case HamiltonianOrder::second_order:
      return p * p / (2.0 * m) + m * c2 + eps * (1.0 - p * p / (2.0 * m * m * c2)) +
             eps * eps * p * p / (2.0 * m * m * m * c2 * c2);
    case HamiltonianOrder::nonrelativistic:
      return p * p / (2.0 * m) + eps;
  }
  return 0.0;
}

double group_velocity(const PhysicalParams& pp, double p, double eps, HamiltonianOrder order) {
  const double m = pp.m, c2 = pp.c * pp.c;
  switch (order) {
    case HamiltonianOrder::exact:
      return p / (m + eps / c2);
    case HamiltonianOrder::first_order:
      return p / m - eps * p / (m * m * c2);
    case HamiltonianOrder::second_order:
      return p / m - eps * p / (m * m * c2) + eps * eps * p / (m * m * m * c2 * c2);
    case HamiltonianOrder::nonrelativistic:
      return p / m;
  }
  return 0.0;
}

namespace {

// dv/dp at fixed eps; all four orders are linear in p, so this is v(1)/1.
double velocity_slope(const PhysicalParams& pp, double eps, HamiltonianOrder order) {
  return group_velocity(pp, 1.0, eps, order);
}

// 4th-order central derivative with stencil spacing `s` grid steps, zero
// padding outside the box (edge amplitudes are below the fit tolerance).
void deriv4(const cplx* f, int n, double h, int s, cplx* out) {
  const double inv = 1.0 / (12.0 * s * h);
  auto at = [&](int k) -> cplx { return (k < 0 || k >= n) ? cplx(0.0) : f[k]; };
  for (int k = 0; k < n; ++k) {
    out[k] = (8.0 * (at(k + s) - at(k - s)) - (at(k + 2 * s) - at(k - 2 * s))) * inv;
  }
}

}  // namespace

CompositeState evolve(const CompositeState& st, double t, HamiltonianOrder order) {
  CompositeState out = st;
  const int nb = st.n_branches(), n = st.grid.n_points;
  const double h = st.params.hbar;
#pragma omp parallel for schedule(static)
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

namespace {

MomentReport moments_of(const CompositeState& st, HamiltonianOrder order) {
  const int nb = st.n_branches(), n = st.grid.n_points;
  const double h = st.params.hbar, dp = st.grid.dp();
  const double w0 = st.branch_measure() * dp;

  MomentReport r;
  double norm = 0, sx = 0, sx2 = 0, sp = 0, sp2 = 0, sv = 0, sv2 = 0, sxv = 0, sxp = 0;
  double se = 0, se2 = 0, noise2 = 0, dmag2 = 0;

#pragma omp parallel for schedule(static) reduction(+:norm,sx,sx2,sp,sp2,sv,sv2,sxv,sxp,se,se2,noise2,dmag2)
  for (int b = 0; b < nb; ++b) {
    const double eps = st.branch_energy(b);
    const double slope = velocity_slope(st.params, eps, order);
    const cplx* f = st.branch(b);
    std::vector<cplx> d1(n), d2(n);
    deriv4(f, n, dp, 1, d1.data());
    deriv4(f, n, dp, 2, d2.data());
    for (int k = 0; k < n; ++k) {
      const double p = st.grid.p(k);
      const double v = group_velocity(st.params, p, eps, order);
      const cplx fk = f[k];
      const double a2 = std::norm(fk);
      const cplx d = (16.0 * d1[k] - d2[k]) / 15.0;  // Richardson
      const cplx xf = cplx(0.0, h) * d;              // (x Psi)(p)
      noise2 += std::norm(d - d1[k]);
      dmag2 += std::norm(d);
      norm += a2;
      sp += p * a2;
      sp2 += p * p * a2;
      sv += v * a2;
      sv2 += v * v * a2;
      se += eps * a2;
      se2 += eps * eps * a2;
      sx += (std::conj(fk) * xf).real();
      sx2 += std::norm(xf);
      // Symmetrized products: <{x,v}/2> = Re<f| v x f> + (hbar/2) dv/dp * <f|i f>'
      // realized as Re[conj(f) (v*xf + (i hbar/2) slope f)].
      sxv += (std::conj(fk) * (v * xf + cplx(0.0, 0.5 * h * slope) * fk)).real();
      sxp += (std::conj(fk) * (p * xf + cplx(0.0, 0.5 * h) * fk)).real();
    }
  }

  if (dmag2 > 0.0 && std::sqrt(noise2 / dmag2) > 1e-6)
    throw DerivativeNoise("finite-difference stencils disagree: rel L2 = " +
                          std::to_string(std::sqrt(noise2 / dmag2)));

  const double N = norm * w0;
  r.norm = N;
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
  r.var_Hc = std::max(0.0, se2 * inv - r.mean_Hc * r.mean_Hc);

  const ClockMoments cm = clock_moments(st);
  r.mbar = cm.mbar;
  r.lambda = cm.lambda;

  // Ideal clock: proper-time spread from the energy-axis derivative.
  if (!st.is_discrete() && nb >= 8) {
    const double de = st.ideal().de();
    double st1 = 0, st2 = 0;
    std::vector<cplx> col(nb), c1(nb), c2(nb);
    for (int k = 0; k < n; ++k) {
      for (int b = 0; b < nb; ++b) col[b] = st.branch(b)[k];
      deriv4(col.data(), nb, de, 1, c1.data());
      deriv4(col.data(), nb, de, 2, c2.data());
      for (int b = 0; b < nb; ++b) {
        const cplx d = (16.0 * c1[b] - c2[b]) / 15.0;
        const cplx tf = cplx(0.0, h) * d;
        st1 += (std::conj(col[b]) * tf).real();
        st2 += std::norm(tf);
      }
    }
    const double mt = st1 * inv;
    r.var_tau = st2 * inv - mt * mt;
  }
  return r;
}

}  // namespace

MomentReport compute_moments(const CompositeState& st, double t, HamiltonianOrder order) {
  MomentReport r;
  if (t == 0.0) {
    r = moments_of(st, order);
  } else {
    r = moments_of(evolve(st, t, order), order);
  }
  r.t = t;
  return r;
}

ClockReducedState reduce_clock(const CompositeState& st) {
  const int nb = st.n_branches(), n = st.grid.n_points;
  const double w = st.branch_measure() * st.grid.dp();
  ClockReducedState out;
  out.n = nb;
  out.rho.assign(static_cast<std::size_t>(nb) * nb, cplx(0.0));
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < nb; ++i) {
    const cplx* fi = st.branch(i);
    for (int j = i; j < nb; ++j) {
      const cplx* fj = st.branch(j);
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) s += fi[k] * std::conj(fj[k]);
      s *= w;
      out.rho[static_cast<std::size_t>(i) * nb + j] = s;
      out.rho[static_cast<std::size_t>(j) * nb + i] = std::conj(s);
    }
  }
  return out;
}

double trace_distance(const ClockReducedState& a, const ClockReducedState& b) {
  const int n = a.n;
  Eigen::MatrixXcd d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      d(i, j) = a.rho[static_cast<std::size_t>(i) * n + j] -
                b.rho[static_cast<std::size_t>(i) * n + j];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double commutator_trace_norm(const ClockReducedState& rho, const std::vector<double>& eps,
                             double scale) {
  const int n = rho.n;
  // i[rho, H] is Hermitian; its trace norm is the sum of |eigenvalues|.
  Eigen::MatrixXcd c(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      c(i, j) = cplx(0.0, 1.0) * rho.rho[static_cast<std::size_t>(i) * n + j] *
                (eps[j] - eps[i]) * scale;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(c, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().sum();
}

double default_t_max(const CompositeState& st) {
  const ClockMoments cm = clock_moments(st);
  if (!(cm.var_Hc > 0.0)) throw ZeroSpread("default_t_max: internal-energy spread is zero");
  return 1e3 * st.params.hbar / std::sqrt(cm.var_Hc);
}

namespace {

template <typename F>
double bisect_crossing(F&& dist, double lo, double hi, double level, bool rising) {
  for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    const bool above = dist(mid) >= level;
    if (above == rising)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

template <typename F>
void golden_max(F&& dist, double lo, double hi, double& t_best, double& d_best) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = dist(x1), f2 = dist(x2);
  for (int it = 0; it < 120 && (b - a) > 1e-12 * b; ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = dist(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = dist(x1);
    }
  }
  if (f1 >= f2) {
    t_best = x1;
    d_best = f1;
  } else {
    t_best = x2;
    d_best = f2;
  }
}

}  // namespace

double threshold_time(const CompositeState& st, double delta, HamiltonianOrder order,
                      double t_max) {
  if (!(delta > 0.0 && delta <= 2.0))
    throw ConfigInvalid("threshold_time: delta must lie in (0, 2]");
  if (t_max < 0.0) t_max = default_t_max(st);
  const ClockReducedState rho0 = reduce_clock(st);
  auto dist = [&](double t) { return trace_distance(reduce_clock(evolve(st, t, order)), rho0); };

  // Step resolving both the fastest pair phase and the overall spread scale.
  double wmax = 0.0;
  for (int i = 0; i < st.n_branches(); ++i)
    for (int j = i + 1; j < st.n_branches(); ++j)
      wmax = std::max(wmax, std::abs(st.branch_energy(i) - st.branch_energy(j)));
  const ClockMoments cm = clock_moments(st);
  if (!(cm.var_Hc > 0.0)) throw ZeroSpread("threshold_time: internal-energy spread is zero");
  const double h = st.params.hbar;
  const double dt =
      std::min(std::numbers::pi * h / wmax, 0.5 * std::numbers::pi * h / std::sqrt(cm.var_Hc)) /
      64.0;

  double prev = 0.0, prev2 = 0.0;
  int step = 0;
  for (double t = dt;; t += dt, ++step) {
    if (t > t_max + 0.5 * dt) return std::numeric_limits<double>::infinity();
    const double d = dist(t);
    if (d >= delta) return bisect_crossing(dist, t - dt, t, delta, true);
    if (step >= 2 && prev > prev2 && prev > d) {
      // A local maximum of the distance sits in (t-2dt, t); check whether it
      // tangentially attains delta.
      double tm = 0.0, dm = 0.0;
      golden_max(dist, t - 2.0 * dt, t, tm, dm);
      if (dm >= delta * (1.0 - 1e-9)) {
        if (dm > delta * (1.0 + 1e-12))
          return bisect_crossing(dist, t - 2.0 * dt, tm, delta, true);
        // Tangential contact: the crossings of a slightly lowered level are
        // symmetric about the contact time; return their midpoint.
        const double level = dm * (1.0 - 1e-6);
        const double tl = bisect_crossing(dist, t - 2.0 * dt, tm, level, true);
        const double tr = bisect_crossing(dist, tm, t, level, false);
        return 0.5 * (tl + tr);
      }
    }
    prev2 = prev;
    prev = d;
  }
}

}  // namespace stqrf
