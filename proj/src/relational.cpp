#include "stqrf/relational.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>

namespace stqrf {

double dilation_factor(const PhysicalParams& pp, double p, double eps, HamiltonianOrder order) {
  const double m = pp.m, c2 = pp.c * pp.c;
  switch (order) {
    case HamiltonianOrder::nonrelativistic:
      return 1.0;
    case HamiltonianOrder::first_order:
      return 1.0 - p * p / (2.0 * m * m * c2);
    case HamiltonianOrder::second_order:
      return 1.0 - (p * p / (2.0 * m * m * c2)) * (1.0 - 2.0 * eps / (m * c2));
    case HamiltonianOrder::exact: {
      const double me = m + eps / c2;
      return 1.0 - p * p / (2.0 * me * me * c2);
    }
  }
  return 1.0;
}

// ---------------------------------------------------------------------------
// POVM normalization audit
// ---------------------------------------------------------------------------

namespace {

// Symmetric Dirichlet kernel: dt * sum_{j} exp(i t_j w / hbar) over the
// centered time grid t_j = (j - (N-1)/2) dt.
double dirichlet(double w, double dt, int N, double hbar) {
  const double phi = 0.5 * w * dt / hbar;
  const double s = std::sin(phi);
  if (std::abs(s) < 1e-14) return dt * N * std::cos(N * phi) / std::cos(phi);
  return dt * std::sin(N * phi) / s;
}

double operator_norm_herm(const Eigen::MatrixXcd& a) {
  // Power iteration on a^2 (Hermitian, PSD) with a deterministic start.
  const int n = static_cast<int>(a.rows());
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(1.0, 0.1 * ((i % 7) - 3));
  v.normalize();
  double lam = 0.0;
  for (int it = 0; it < 200; ++it) {
    Eigen::VectorXcd w = a * (a * v);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    w /= nw;
    const double nl = std::real(w.dot(a * (a * w)));
    if (it > 20 && std::abs(nl - lam) < 1e-12 * std::max(1.0, nl)) {
      lam = nl;
      break;
    }
    lam = nl;
    v = w;
  }
  return std::sqrt(std::max(0.0, lam));
}

// Admitting map for the audit: Gaussian energy envelope (4 sigma at the grid
// edge) times the projector onto the central clock-time DFT modes |m| <= M0.
Eigen::MatrixXcd admitting_map(int N, int M0) {
  Eigen::MatrixXcd pi = Eigen::MatrixXcd::Zero(N, N);
  for (int b = 0; b < N; ++b)
    for (int bp = 0; bp < N; ++bp) {
      cplx s = 0.0;
      for (int m = -M0; m <= M0; ++m) {
        const double ph = 2.0 * std::numbers::pi * m * (b - bp) / N;
        s += cplx(std::cos(ph), std::sin(ph));
      }
      pi(b, bp) = s / static_cast<double>(N);
    }
  for (int b = 0; b < N; ++b) {
    const double x = (b - 0.5 * (N - 1)) / (0.125 * N);
    pi.row(b) *= std::exp(-0.25 * x * x);
  }
  return pi;
}

}  // namespace

double povm_normalization_audit(const PovmSpec& spec, const PhysicalParams& pp) {
  pp.validate();
  // The p-blocks are independent, so a sparse set of momentum slices is fine
  // (no quadrature happens over p here); don't demand a dense grid.
  if (spec.p_grid.n_points < 2 || !(spec.p_grid.p_max > spec.p_grid.p_min))
    throw ConfigInvalid("povm_normalization_audit: need at least two momentum slices");
  if (spec.n_eps < 8) throw ConfigInvalid("povm_normalization_audit: n_eps must be >= 8");
  if (!(spec.window_fraction > 0.0 && spec.window_fraction < 1.0))
    throw ConfigInvalid("povm_normalization_audit: window_fraction must lie in (0,1)");

  const int N = spec.n_eps;
  const double de = spec.de();
  const double h = pp.hbar;
  const double dt = 2.0 * std::numbers::pi * h / (N * de);
  const int M0 = spec.window_modes > 0
                     ? spec.window_modes
                     : std::max(1, static_cast<int>(std::floor(0.5 * spec.window_fraction * N)));
  if (2 * M0 + 1 >= N)
    throw ConfigInvalid("povm_normalization_audit: clock-time window must be a proper subspace");
  const Eigen::MatrixXcd win = admitting_map(N, M0);

  double worst = 0.0;
  for (int k = 0; k < spec.p_grid.n_points; ++k) {
    const double p = spec.p_grid.p(k);
    std::vector<double> D(N), E(N);
    for (int b = 0; b < N; ++b) {
      D[b] = dilation_factor(pp, p, spec.eps(b), spec.order);
      if (D[b] <= 0.0)
        throw DilationNonPositive("povm_normalization_audit: dilation factor <= 0 on the grid");
      E[b] = dispersion(pp, p, spec.eps(b), spec.order);
    }
    Eigen::MatrixXcd M(N, N);
    for (int b = 0; b < N; ++b)
      for (int bp = 0; bp < N; ++bp) {
        const double w = spec.weighted_seed ? std::sqrt(D[b] * D[bp]) : 1.0;
        const double K = dirichlet(E[b] - E[bp], dt, N, h);
        const double ph = -(spec.eps(b) - spec.eps(bp)) * spec.tau0 / h;
        M(b, bp) = (de / (2.0 * std::numbers::pi * h)) * w * K *
                   cplx(std::cos(ph), std::sin(ph));
      }
    const Eigen::MatrixXcd A =
        win.adjoint() * (M - Eigen::MatrixXcd::Identity(N, N)) * win;
    worst = std::max(worst, operator_norm_herm(A));
  }
  return worst;
}

double povm_unweighted_defect(const PovmSpec& spec, const PhysicalParams& pp) {
  double worst = 0.0;
  for (int k = 0; k < spec.p_grid.n_points; ++k)
    for (int b = 0; b < spec.n_eps; ++b) {
      const double D = dilation_factor(pp, spec.p_grid.p(k), spec.eps(b), spec.order);
      if (D <= 0.0)
        throw DilationNonPositive("povm_unweighted_defect: dilation factor <= 0 on the grid");
      worst = std::max(worst, 1.0 / D - 1.0);
    }
  return worst;
}

// ---------------------------------------------------------------------------
// Relational position operator
// ---------------------------------------------------------------------------

namespace {

// Richardson-extrapolated 4th-order derivative along one axis of a
// rank-3 array laid out as index = (outer * n_axis + a) * n_inner + inner.
void axis_derivative(const std::vector<cplx>& in, std::vector<cplx>& out, int n_outer,
                     int n_axis, int n_inner, double h) {
  out.assign(in.size(), cplx(0.0));
  const double c1 = 1.0 / (12.0 * h), c2 = 1.0 / (24.0 * h);
#pragma omp parallel for schedule(static)
  for (int o = 0; o < n_outer; ++o) {
    const std::size_t base = static_cast<std::size_t>(o) * n_axis * n_inner;
    auto at = [&](int a, int i) -> cplx {
      if (a < 0 || a >= n_axis) return cplx(0.0);
      return in[base + static_cast<std::size_t>(a) * n_inner + i];
    };
    for (int a = 0; a < n_axis; ++a)
      for (int i = 0; i < n_inner; ++i) {
        const cplx d1 = (8.0 * (at(a + 1, i) - at(a - 1, i)) - (at(a + 2, i) - at(a - 2, i))) * c1;
        const cplx d2 = (8.0 * (at(a + 2, i) - at(a - 2, i)) - (at(a + 4, i) - at(a - 4, i))) * c2;
        out[base + static_cast<std::size_t>(a) * n_inner + i] = (16.0 * d1 - d2) / 15.0;
      }
  }
}

void require_ideal_rod_clock(const CompositeState& rc) {
  if (rc.is_discrete())
    throw ConfigInvalid("relational observable requires an ideal-clock rod state");
  if (rc.ideal().n_eps < 16)
    throw ConfigInvalid("relational observable: n_eps must be >= 16");
}

}  // namespace

JointVector joint_product(const CompositeState& rod_clock, const SystemSpec& system) {
  require_ideal_rod_clock(rod_clock);
  JointVector j;
  j.n_eps = rod_clock.n_branches();
  j.n_p = rod_clock.grid.n_points;
  j.n_s = system.grid_s.n_points;
  j.v.resize(static_cast<std::size_t>(j.n_eps) * j.n_p * j.n_s);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < j.n_eps; ++b)
    for (int i = 0; i < j.n_p; ++i) {
      const cplx a = rod_clock.branch(b)[i];
      cplx* row = j.v.data() + (static_cast<std::size_t>(b) * j.n_p + i) * j.n_s;
      for (int k = 0; k < j.n_s; ++k) row[k] = a * system.amp_s[k];
    }
  return j;
}

JointVector relational_position_apply(const CompositeState& rod_clock, const SystemSpec& system,
                                      const JointVector& in, double x0, double tau0,
                                      HamiltonianOrder order) {
  require_ideal_rod_clock(rod_clock);
  const int nb = in.n_eps, np = in.n_p, ns = in.n_s;
  const std::size_t sz = in.v.size();
  const PhysicalParams& pp = rod_clock.params;
  const double h = pp.hbar, c2 = pp.c * pp.c;
  const bool rel = (order != HamiltonianOrder::nonrelativistic);

  // Diagonal factors.
  std::vector<double> Dinv(static_cast<std::size_t>(nb) * np), mDinv(Dinv.size());
  for (int b = 0; b < nb; ++b) {
    const double eps = rod_clock.branch_energy(b);
    const double me = rel ? pp.m + eps / c2 : pp.m;
    for (int i = 0; i < np; ++i) {
      const double D = dilation_factor(pp, rod_clock.grid.p(i), eps, order);
      if (D <= 0.0)
        throw DilationNonPositive("relational_position_apply: dilation factor <= 0");
      Dinv[static_cast<std::size_t>(b) * np + i] = 1.0 / D;
      mDinv[static_cast<std::size_t>(b) * np + i] = 1.0 / (me * D);
    }
  }

  const double de = rod_clock.ideal().de();
  auto tau_apply = [&](const std::vector<cplx>& src, std::vector<cplx>& dst) {
    // (tau - tau0) = i hbar d/d(eps) - tau0.
    axis_derivative(src, dst, 1, nb, np * ns, de);
    for (std::size_t q = 0; q < sz; ++q) dst[q] = cplx(0.0, h) * dst[q] - tau0 * src[q];
  };
  auto diag_apply = [&](const std::vector<double>& diag, const std::vector<cplx>& src,
                        std::vector<cplx>& dst) {
    dst.resize(sz);
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nb; ++b)
      for (int i = 0; i < np; ++i) {
        const double d = diag[static_cast<std::size_t>(b) * np + i];
        const std::size_t off = (static_cast<std::size_t>(b) * np + i) * ns;
        for (int k = 0; k < ns; ++k) dst[off + k] = d * src[off + k];
      }
  };

  std::vector<cplx> tau_v(sz), tmp(sz), anti_D(sz), anti_mD(sz), scratch(sz);
  tau_apply(in.v, tau_v);

  // {tau - tau0, D^-1}/2 and {tau - tau0, (m D)^-1}/2.
  diag_apply(Dinv, in.v, tmp);
  tau_apply(tmp, anti_D);
  diag_apply(Dinv, tau_v, scratch);
  for (std::size_t q = 0; q < sz; ++q) anti_D[q] = 0.5 * (anti_D[q] + scratch[q]);

  diag_apply(mDinv, in.v, tmp);
  tau_apply(tmp, anti_mD);
  diag_apply(mDinv, tau_v, scratch);
  for (std::size_t q = 0; q < sz; ++q) anti_mD[q] = 0.5 * (anti_mD[q] + scratch[q]);

  // Position derivatives.
  std::vector<cplx> xs(sz), xr(sz);
  axis_derivative(in.v, xs, nb * np, ns, 1, system.grid_s.dp());
  axis_derivative(in.v, xr, nb, np, ns, rod_clock.grid.dp());

  JointVector out;
  out.n_eps = nb;
  out.n_p = np;
  out.n_s = ns;
  out.v.resize(sz);
#pragma omp parallel for schedule(static)
  for (int b = 0; b < nb; ++b)
    for (int i = 0; i < np; ++i) {
      const double pr = rod_clock.grid.p(i);
      const std::size_t off = (static_cast<std::size_t>(b) * np + i) * ns;
      for (int k = 0; k < ns; ++k) {
        const double ps = system.grid_s.p(k);
        out.v[off + k] = cplx(0.0, h) * xs[off + k] + (ps / system.m_s) * anti_D[off + k] -
                         cplx(0.0, h) * xr[off + k] - pr * anti_mD[off + k] +
                         x0 * in.v[off + k];
      }
    }

  // Guard: the inverse-dilation weights must not have amplified the momentum
  // box truncation edges into relevance.
  double peak = 0.0, edge = 0.0;
  for (int b = 0; b < nb; ++b)
    for (int k = 0; k < ns; ++k) {
      const std::size_t lo = (static_cast<std::size_t>(b) * np + 0) * ns + k;
      const std::size_t hi = (static_cast<std::size_t>(b) * np + (np - 1)) * ns + k;
      edge = std::max({edge, std::abs(out.v[lo]), std::abs(out.v[hi])});
    }
  for (std::size_t q = 0; q < sz; ++q) peak = std::max(peak, std::abs(out.v[q]));
  if (edge > 1e-8 * peak)
    throw RegimeViolation("relational_position_apply: dilation weights amplified the grid edge");
  return out;
}

namespace {

struct Moments1d {
  double mean_x = 0, var_x = 0, mean_p = 0, var_p = 0, cov_xp = 0, norm = 0;
};

Moments1d moments_1d(const std::vector<cplx>& f, const MomentumGrid& g, double hbar) {
  const int n = g.n_points;
  const double dp = g.dp();
  std::vector<cplx> d(n);
  const double c1 = 1.0 / (12.0 * dp), c2 = 1.0 / (24.0 * dp);
  auto at = [&](int k) -> cplx { return (k < 0 || k >= n) ? cplx(0.0) : f[k]; };
  for (int k = 0; k < n; ++k) {
    const cplx d1 = (8.0 * (at(k + 1) - at(k - 1)) - (at(k + 2) - at(k - 2))) * c1;
    const cplx d2 = (8.0 * (at(k + 2) - at(k - 2)) - (at(k + 4) - at(k - 4))) * c2;
    d[k] = (16.0 * d1 - d2) / 15.0;
  }
  Moments1d m;
  double s0 = 0, sx = 0, sx2 = 0, sp = 0, sp2 = 0, sxp = 0;
  for (int k = 0; k < n; ++k) {
    const double p = g.p(k);
    const cplx xf = cplx(0.0, hbar) * d[k];
    s0 += std::norm(f[k]);
    sp += p * std::norm(f[k]);
    sp2 += p * p * std::norm(f[k]);
    sx += (std::conj(f[k]) * xf).real();
    sx2 += std::norm(xf);
    sxp += (std::conj(f[k]) * (p * xf + cplx(0.0, 0.5 * hbar) * f[k])).real();
  }
  m.norm = s0 * dp;
  m.mean_x = sx / s0;
  m.var_x = sx2 / s0 - m.mean_x * m.mean_x;
  m.mean_p = sp / s0;
  m.var_p = sp2 / s0 - m.mean_p * m.mean_p;
  m.cov_xp = sxp / s0 - m.mean_x * m.mean_p;
  return m;
}

double inner_re(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double s = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) s += (std::conj(a[q]) * b[q]).real();
  return s;
}

double norm2(const std::vector<cplx>& a) {
  double s = 0.0;
  for (const cplx& z : a) s += std::norm(z);
  return s;
}

// Raw first/second moments of the clock time operator on the rod+clock state,
// and Cov(p^2, tau^2).
struct TauMoments {
  double mean_tau = 0, tau2 = 0, var_tau = 0;
  double cov_p2_tau2 = 0;
};

TauMoments tau_moments(const CompositeState& st) {
  require_ideal_rod_clock(st);
  const int nb = st.n_branches(), n = st.grid.n_points;
  const double de = st.ideal().de(), h = st.params.hbar;
  std::vector<cplx> col(nb), d(nb);
  const double c1 = 1.0 / (12.0 * de), c2 = 1.0 / (24.0 * de);
  double s0 = 0, s1 = 0, s2 = 0, sp2 = 0, sp2t2 = 0, spp = 0;
  for (int k = 0; k < n; ++k) {
    const double p = st.grid.p(k);
    for (int b = 0; b < nb; ++b) col[b] = st.branch(b)[k];
    auto at = [&](int b) -> cplx { return (b < 0 || b >= nb) ? cplx(0.0) : col[b]; };
    for (int b = 0; b < nb; ++b) {
      const cplx d1 = (8.0 * (at(b + 1) - at(b - 1)) - (at(b + 2) - at(b - 2))) * c1;
      const cplx d2 = (8.0 * (at(b + 2) - at(b - 2)) - (at(b + 4) - at(b - 4))) * c2;
      d[b] = (16.0 * d1 - d2) / 15.0;
    }
    for (int b = 0; b < nb; ++b) {
      const cplx tf = cplx(0.0, h) * d[b];
      const double a2 = std::norm(col[b]);
      s0 += a2;
      s1 += (std::conj(col[b]) * tf).real();
      s2 += std::norm(tf);
      sp2 += p * p * a2;
      sp2t2 += p * p * std::norm(tf);
      spp += p * p * p * p * a2;  // unused, kept for symmetry
    }
  }
  (void)spp;
  TauMoments tm;
  tm.mean_tau = s1 / s0;
  tm.tau2 = s2 / s0;
  tm.var_tau = tm.tau2 - tm.mean_tau * tm.mean_tau;
  tm.cov_p2_tau2 = sp2t2 / s0 - (sp2 / s0) * tm.tau2;
  return tm;
}

}  // namespace

RelationalVarianceReport relational_variance(const CompositeState& rod_clock,
                                             const SystemSpec& system, double x0, double tau0,
                                             HamiltonianOrder order) {
  const JointVector j = joint_product(rod_clock, system);
  const JointVector w = relational_position_apply(rod_clock, system, j, x0, tau0, order);

  RelationalVarianceReport r;
  const double n2 = norm2(j.v);
  r.mean = inner_re(j.v, w.v) / n2;
  r.total = norm2(w.v) / n2 - r.mean * r.mean;

  // Closed-form nonrelativistic decomposition from the marginal moments.
  const MomentReport rod = compute_moments(rod_clock, 0.0, order);
  const Moments1d sys = moments_1d(system.amp_s, system.grid_s, rod_clock.params.hbar);
  const TauMoments tm = tau_moments(rod_clock);
  const double m_r = rod_clock.params.m, m_s = system.m_s;
  const double Bmean = tm.mean_tau - tau0;
  const double vv = sys.var_p / (m_s * m_s) + rod.var_p / (m_r * m_r);

  r.var_x_s = sys.var_x;
  r.var_x_r = rod.var_x;
  r.drift_term = vv * Bmean * Bmean;
  r.clock_term = vv * tm.var_tau;
  const double vrel = sys.mean_p / m_s - rod.mean_p / m_r;
  r.relative_motion_term = vrel * vrel * tm.var_tau;
  r.closed_form_total = r.var_x_s + r.var_x_r + r.drift_term + r.clock_term +
                        r.relative_motion_term +
                        2.0 * Bmean * (sys.cov_xp / m_s + rod.cov_xp / m_r);

  const PhysicalParams& pp = rod_clock.params;
  const double h = pp.hbar, mc2 = pp.rest_energy();
  const ClockMoments cmom = clock_moments(rod_clock);
  const double s2 = cmom.var_Hc / (mc2 * mc2);
  r.lambda = cmom.lambda;
  r.bound_rel_rod = rod.var_x + rod.var_v * tau0 * tau0 +
                    (2.0 / 3.0) * (rod.var_p / (m_r * m_r)) * tm.var_tau;
  r.bound_energy_spread = h * std::abs(tau0) / cmom.mbar + (h * std::abs(tau0) / m_r) * s2;
  r.bound_compton = h * std::abs(tau0) / cmom.mbar +
                    (1.0 / std::sqrt(3.0)) * (h / (m_r * pp.c)) * (h / (m_r * pp.c));
  r.dropped_term = 1.25 * (h * h / (mc2 * mc2)) * (rod.var_p / (m_r * m_r));
  return r;
}

namespace {

template <typename F>
double golden_min(F&& f, double lo, double hi, double& x_best) {
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
    if (f1 > f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = f(x1);
    }
  }
  x_best = 0.5 * (a + b);
  return f(x_best);
}

}  // namespace

RelationalMinimum relational_minimum(const PhysicalParams& pp, double tau0) {
  pp.validate();
  const double h = pp.hbar, m = pp.m, mc2 = pp.rest_energy();
  const double kappa = h / mc2;  // hbar/(m c^2), time scale of the Compton floor
  if (std::abs(tau0) < 10.0 * kappa)
    throw RegimeViolation("relational_minimum: |tau0| must exceed 10 hbar/(m c^2)");

  const double P = 0.25 * h * h * tau0 * tau0 / (m * m);
  const double Q = 0.25 * h * h / (m * m);
  const double u = 0.25 * kappa * kappa;

  auto min_over_x = [&](double T2) {
    const double a = 1.0 + u / T2;
    return 2.0 * std::sqrt(P * a * a + Q * (2.0 / 3.0) * T2);
  };

  RelationalMinimum out;
  const double T2_star_guess = std::sqrt(3.0) * std::sqrt(u) * std::abs(tau0);

  // Order 1: closed-form minimum over var_x at each T2, then scan T2 on a log
  // grid bracket around the analytic guess.
  {
    double best = 0.0;
    auto g = [&](double logT2) { return min_over_x(std::exp(logT2)); };
    const double l0 = std::log(T2_star_guess);
    golden_min(g, l0 - 8.0, l0 + 8.0, best);
    out.optimal_var_tau = std::exp(best);
    out.min_x_then_tau = min_over_x(out.optimal_var_tau);
  }

  // Order 2: minimize over T2 at fixed var_x first, outer golden over var_x.
  {
    auto inner = [&](double X) {
      double bt = 0.0;
      auto hfun = [&](double logT2) {
        const double T2 = std::exp(logT2);
        const double a = 1.0 + u / T2;
        return X + (P * a * a + Q * (2.0 / 3.0) * T2) / X;
      };
      const double l0 = std::log(T2_star_guess);
      return golden_min(hfun, l0 - 8.0, l0 + 8.0, bt);
    };
    double bx = 0.0;
    auto outer = [&](double logX) { return inner(std::exp(logX)); };
    const double x_guess = 0.5 * out.min_x_then_tau;  // var_x* = half the total
    const double lx = std::log(std::max(x_guess, 1e-300));
    out.min_tau_then_x = golden_min(outer, lx - 4.0, lx + 4.0, bx);
  }

  out.closed_form = h * std::abs(tau0) / m + (1.0 / std::sqrt(3.0)) * kappa * kappa * mc2 / m;
  // dropped relativistic correction, evaluated with var_p ~ hbar^2/(4 var_x*)
  const double x_star = 0.5 * out.min_x_then_tau;
  out.dropped_term_estimate =
      1.25 * (h * h / (mc2 * mc2)) * (h * h / (4.0 * x_star)) / (m * m);
  return out;
}

double relational_minimum_nonrel(const PhysicalParams& pp, double tau0, double var_tau) {
  return (pp.hbar / pp.m) * std::sqrt(tau0 * tau0 + var_tau);
}

RelationalTradeoffReport relational_tradeoff_check(const CompositeState& rod_clock,
                                                   const SystemSpec& system, double x0,
                                                   double tau0) {
  RelationalTradeoffReport r;
  const RelationalVarianceReport rv =
      relational_variance(rod_clock, system, x0, tau0, HamiltonianOrder::exact);
  const TauMoments tm = tau_moments(rod_clock);
  const ClockMoments cm = clock_moments(rod_clock);
  const PhysicalParams& pp = rod_clock.params;
  r.lhs = std::sqrt(rv.total) * std::sqrt(tm.var_tau);
  r.rhs = 0.5 * std::sqrt(pp.hbar * std::abs(tau0) / cm.mbar) * pp.hbar / pp.rest_energy();
  r.slack = r.lhs / r.rhs;
  r.correlation_assumption_ok = tm.cov_p2_tau2 >= -1e-9 * tm.tau2;
  return r;
}

}  // namespace stqrf
