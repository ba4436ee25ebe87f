#include "stqrf/state.hpp"

#include <cmath>
#include <numbers>

namespace stqrf {

namespace {

constexpr double kEdgeTolerance = 1e-10;

void check_grid_fit(const CompositeState& st) {
  const int n = st.grid.n_points;
  double peak = 0.0, edge = 0.0;
  for (int b = 0; b < st.n_branches(); ++b) {
    const cplx* f = st.branch(b);
    for (int k = 0; k < n; ++k) peak = std::max(peak, std::abs(f[k]));
    edge = std::max({edge, std::abs(f[0]), std::abs(f[n - 1])});
  }
  if (edge > kEdgeTolerance * peak)
    throw GridOverflow("state does not fit the momentum box: edge/peak = " +
                       std::to_string(edge / peak));
}

void check_regime(const CompositeState& st) {
  const double lam = st.lambda();
  if (lam > kLambdaMax)
    throw RegimeViolation("internal-energy spread too large: lambda = " +
                          std::to_string(lam));
}

}  // namespace

double CompositeState::norm_squared() const {
  const double w = branch_measure() * grid.dp();
  double s = 0.0;
  for (const cplx& a : amp) s += std::norm(a);
  return w * s;
}

ClockMoments clock_moments(const DiscreteClockSpec& clock, const PhysicalParams& pp) {
  ClockMoments cm;
  double e1 = 0.0, e2 = 0.0, im = 0.0, im2 = 0.0;
  for (const auto& lv : clock.levels) {
    const double w = std::norm(lv.phi);
    const double mi = pp.m + lv.epsilon / (pp.c * pp.c);
    e1 += w * lv.epsilon;
    e2 += w * lv.epsilon * lv.epsilon;
    im += w / mi;
    im2 += w / (mi * mi);
  }
  cm.mean_Hc = e1;
  cm.var_Hc = std::max(0.0, e2 - e1 * e1);
  cm.inv_mass = im;
  cm.inv_mass2 = im2;
  cm.mbar = pp.m + e1 / (pp.c * pp.c);
  cm.lambda = std::sqrt(cm.var_Hc) / pp.rest_energy();
  return cm;
}

ClockMoments clock_moments(const CompositeState& st) {
  // Branch weights from the state itself (for MUS states the branch packets
  // are unit-normalized, so these coincide with |phi_i|^2).
  ClockMoments cm;
  const double wq = st.branch_measure() * st.grid.dp();
  double e1 = 0.0, e2 = 0.0, im = 0.0, im2 = 0.0, tot = 0.0;
  for (int b = 0; b < st.n_branches(); ++b) {
    const cplx* f = st.branch(b);
    double w = 0.0;
    for (int k = 0; k < st.grid.n_points; ++k) w += std::norm(f[k]);
    w *= wq;
    const double eps = st.branch_energy(b);
    const double mb = st.branch_mass(b);
    tot += w;
    e1 += w * eps;
    e2 += w * eps * eps;
    im += w / mb;
    im2 += w / (mb * mb);
  }
  e1 /= tot; e2 /= tot; im /= tot; im2 /= tot;
  cm.mean_Hc = e1;
  cm.var_Hc = std::max(0.0, e2 - e1 * e1);
  cm.inv_mass = im;
  cm.inv_mass2 = im2;
  cm.mbar = st.params.m + e1 / (st.params.c * st.params.c);
  cm.lambda = std::sqrt(cm.var_Hc) / st.params.rest_energy();
  return cm;
}

double CompositeState::lambda() const { return stqrf::clock_moments(*this).lambda; }

CompositeState make_gaussian_phase_space(const PhysicalParams& pp, const MomentumGrid& grid,
                                         const DiscreteClockSpec& clock, double sigma,
                                         double p0, double x0) {
  pp.validate();
  grid.validate();
  clock.validate(pp);
  if (!(sigma > 0.0)) throw ConfigInvalid("make_gaussian_phase_space: sigma must be positive");

  CompositeState st;
  st.params = pp;
  st.grid = grid;
  st.clock = clock;
  st.meta.family = StateFamily::gaussian_phase_space;
  st.meta.sigma = sigma;
  st.meta.p0 = p0;
  st.meta.x0 = x0;

  const int n = grid.n_points;
  st.amp.resize(static_cast<std::size_t>(clock.levels.size()) * n);
  const double h = pp.hbar;
  const double norm = std::pow(2.0 * sigma * sigma / (std::numbers::pi * h * h), 0.25);
  for (std::size_t b = 0; b < clock.levels.size(); ++b) {
    cplx* f = st.branch(static_cast<int>(b));
    for (int k = 0; k < n; ++k) {
      const double q = grid.p(k) - p0;
      const cplx packet = norm * std::exp(cplx(-q * q * sigma * sigma / (h * h), -q * x0 / h));
      f[k] = clock.levels[b].phi * packet;
    }
  }
  check_grid_fit(st);
  check_regime(st);
  return st;
}

CompositeState make_mus_configuration_space(const PhysicalParams& pp, const MomentumGrid& grid,
                                            const DiscreteClockSpec& clock, double Omega,
                                            double v0, double x0) {
  pp.validate();
  grid.validate();
  clock.validate(pp);
  if (!(Omega > 0.0)) throw ConfigInvalid("make_mus_configuration_space: Omega must be positive");

  CompositeState st;
  st.params = pp;
  st.grid = grid;
  st.clock = clock;
  st.meta.family = StateFamily::mus_configuration_space;
  st.meta.Omega = Omega;
  st.meta.v0 = v0;
  st.meta.x0 = x0;

  const int n = grid.n_points;
  st.amp.resize(static_cast<std::size_t>(clock.levels.size()) * n);
  const double h = pp.hbar;
  for (std::size_t b = 0; b < clock.levels.size(); ++b) {
    const double mi = pp.m + clock.levels[b].epsilon / (pp.c * pp.c);
    const double norm = std::pow(std::numbers::pi * h * mi * Omega, -0.25);
    cplx* f = st.branch(static_cast<int>(b));
    for (int k = 0; k < n; ++k) {
      const double q = grid.p(k) - mi * v0;
      const cplx packet =
          norm * std::exp(cplx(-q * q / (2.0 * mi * h * Omega), -q * x0 / h));
      f[k] = clock.levels[b].phi * packet;
    }
  }
  check_grid_fit(st);
  check_regime(st);
  return st;
}

CompositeState make_contractive(const PhysicalParams& pp, const MomentumGrid& grid,
                                const DiscreteClockSpec& clock, double sigma, double gamma) {
  pp.validate();
  grid.validate();
  clock.validate(pp);
  if (!(sigma > 0.0)) throw ConfigInvalid("make_contractive: sigma must be positive");

  CompositeState st;
  st.params = pp;
  st.grid = grid;
  st.clock = clock;
  st.meta.family = StateFamily::contractive;
  st.meta.sigma = sigma;
  st.meta.gamma = gamma;

  // Momentum representation of exp[-(1+2i gamma) x^2 / 4 sigma^2]: a Gaussian
  // of width sigma_eff^2 = sigma^2/(1+4 gamma^2) with a chirp phase. The sign
  // convention makes Cov(x, p) = -hbar*gamma, so gamma > 0 contracts forward
  // in time.
  const int n = grid.n_points;
  st.amp.resize(static_cast<std::size_t>(clock.levels.size()) * n);
  const double h = pp.hbar;
  const double s2eff = sigma * sigma / (1.0 + 4.0 * gamma * gamma);
  const double norm = std::pow(2.0 * s2eff / (std::numbers::pi * h * h), 0.25);
  const cplx coef = cplx(s2eff, -2.0 * gamma * s2eff) / (h * h);
  for (std::size_t b = 0; b < clock.levels.size(); ++b) {
    cplx* f = st.branch(static_cast<int>(b));
    for (int k = 0; k < n; ++k) {
      const double p = grid.p(k);
      f[k] = clock.levels[b].phi * norm * std::exp(-coef * (p * p));
    }
  }
  check_grid_fit(st);
  check_regime(st);
  return st;
}

CompositeState make_ideal_clock_state(const PhysicalParams& pp, const MomentumGrid& grid,
                                      const IdealClockSpec& clock, const std::string& com_family,
                                      const IdealComParams& fp) {
  pp.validate();
  grid.validate();
  clock.validate(pp);

  CompositeState st;
  st.params = pp;
  st.grid = grid;
  st.clock = clock;
  st.meta.family = StateFamily::ideal_clock;
  st.meta.com_family = com_family;
  st.meta.sigma = fp.sigma;
  st.meta.Omega = fp.Omega;
  st.meta.v0 = fp.v0;
  st.meta.p0 = fp.p0;
  st.meta.x0 = fp.x0;

  const int n = grid.n_points;
  st.amp.resize(static_cast<std::size_t>(clock.n_eps) * n);
  const double h = pp.hbar;
  const double sH = clock.sigma_H;
  // L2-normalized energy Gaussian: integral de |phi|^2 = 1, spread sigma_H.
  const double phinorm = std::pow(2.0 * std::numbers::pi * sH * sH, -0.25);

  for (int b = 0; b < clock.n_eps; ++b) {
    const double eps = clock.eps(b);
    const double de = (eps - clock.epsilon0) / sH;
    const double phi = phinorm * std::exp(-0.25 * de * de);
    cplx* f = st.branch(b);
    if (com_family == "gaussian") {
      const double norm = std::pow(2.0 * fp.sigma * fp.sigma / (std::numbers::pi * h * h), 0.25);
      for (int k = 0; k < n; ++k) {
        const double q = grid.p(k) - fp.p0;
        f[k] = phi * norm *
               std::exp(cplx(-q * q * fp.sigma * fp.sigma / (h * h), -q * fp.x0 / h));
      }
    } else if (com_family == "mus") {
      const double mi = pp.m + eps / (pp.c * pp.c);
      const double norm = std::pow(std::numbers::pi * h * mi * fp.Omega, -0.25);
      for (int k = 0; k < n; ++k) {
        const double q = grid.p(k) - mi * fp.v0;
        f[k] = phi * norm *
               std::exp(cplx(-q * q / (2.0 * mi * h * fp.Omega), -q * fp.x0 / h));
      }
    } else {
      throw ConfigInvalid("make_ideal_clock_state: com_family must be 'gaussian' or 'mus'");
    }
  }
  check_grid_fit(st);
  return st;
}

SystemSpec make_system_gaussian(double m_s, const MomentumGrid& grid, double sigma,
                                double p0, double x0, double hbar) {
  if (!(m_s > 0.0 && sigma > 0.0))
    throw ConfigInvalid("make_system_gaussian: m_s and sigma must be positive");
  grid.validate();
  SystemSpec sys;
  sys.m_s = m_s;
  sys.grid_s = grid;
  sys.amp_s.resize(grid.n_points);
  const double norm = std::pow(2.0 * sigma * sigma / (std::numbers::pi * hbar * hbar), 0.25);
  for (int k = 0; k < grid.n_points; ++k) {
    const double q = grid.p(k) - p0;
    sys.amp_s[k] =
        norm * std::exp(cplx(-q * q * sigma * sigma / (hbar * hbar), -q * x0 / hbar));
  }
  return sys;
}

}  // namespace stqrf
