#pragma once
// Physical constants, grids and internal-clock specifications.
//
// Internally everything is computed in natural units (hbar = m = 1 by
// default); c stays a free parameter so the small ratio
// lambda = (internal-energy spread)/(m c^2) can be tuned through it.

#include <cmath>
#include <complex>
#include <vector>

#include "stqrf/errors.hpp"

namespace stqrf {

using cplx = std::complex<double>;

struct PhysicalParams {
  double m = 1.0;     // rest mass of the composite particle
  double c = 10.0;    // speed of light
  double hbar = 1.0;  // reduced Planck constant

  void validate() const {
    if (!(m > 0.0 && c > 0.0 && hbar > 0.0))
      throw ConfigInvalid("PhysicalParams: m, c, hbar must all be positive");
  }
  double rest_energy() const { return m * c * c; }
};

// The largest internal-energy/rest-energy ratio for which the perturbative
// results are trusted.
inline constexpr double kLambdaMax = 0.2;

struct MomentumGrid {
  double p_min = 0.0;
  double p_max = 0.0;
  int n_points = 1024;

  double dp() const { return (p_max - p_min) / (n_points - 1); }
  double p(int k) const { return p_min + k * dp(); }

  void validate() const {
    if (n_points < 64) throw ConfigInvalid("MomentumGrid: n_points must be >= 64");
    if (!(p_max > p_min)) throw ConfigInvalid("MomentumGrid: p_max must exceed p_min");
  }
};

// Convenience: a grid centered on `p0` spanning +-10 sigma_p.
inline MomentumGrid make_grid(double p0, double sigma_p, int n_points = 1024,
                              double half_width_sigmas = 10.0) {
  MomentumGrid g;
  g.p_min = p0 - half_width_sigmas * sigma_p;
  g.p_max = p0 + half_width_sigmas * sigma_p;
  g.n_points = n_points;
  g.validate();
  return g;
}

struct ClockLevel {
  double epsilon = 0.0;  // internal energy eigenvalue
  cplx phi = 1.0;        // probability amplitude on this level
};

struct DiscreteClockSpec {
  std::vector<ClockLevel> levels;

  void validate(const PhysicalParams& pp) const {
    if (levels.empty()) throw ConfigInvalid("DiscreteClockSpec: need at least one level");
    double norm = 0.0;
    for (std::size_t i = 0; i < levels.size(); ++i) {
      norm += std::norm(levels[i].phi);
      if (std::abs(levels[i].epsilon) >= pp.rest_energy())
        throw RegimeViolation("DiscreteClockSpec: |epsilon| must stay below m c^2");
      if (i > 0 && !(levels[i].epsilon > levels[i - 1].epsilon))
        throw ConfigInvalid("DiscreteClockSpec: levels must be strictly increasing");
    }
    if (std::abs(norm - 1.0) > 1e-12)
      throw ConfigInvalid("DiscreteClockSpec: amplitudes must be normalized");
  }
};

// Symmetric qubit clock: levels at -gap/2, +gap/2 with weights w and 1-w.
inline DiscreteClockSpec make_qubit_clock(double gap, double w_low = 0.5) {
  DiscreteClockSpec c;
  c.levels = {{-0.5 * gap, std::sqrt(w_low)}, {0.5 * gap, std::sqrt(1.0 - w_low)}};
  return c;
}

// Continuous (ideal) clock represented on a truncated uniform energy grid.
struct IdealClockSpec {
  double eps_min = 0.0;
  double eps_max = 0.0;
  int n_eps = 128;
  double epsilon0 = 0.0;  // mean internal energy
  double sigma_H = 0.0;   // internal-energy spread of the Gaussian amplitude

  double de() const { return (eps_max - eps_min) / (n_eps - 1); }
  double eps(int b) const { return eps_min + b * de(); }

  void validate(const PhysicalParams& pp) const {
    if (n_eps < 16) throw ConfigInvalid("IdealClockSpec: n_eps must be >= 16");
    if (!(sigma_H > 0.0)) throw ConfigInvalid("IdealClockSpec: sigma_H must be positive");
    if (eps_min > epsilon0 - 4.0 * sigma_H || eps_max < epsilon0 + 4.0 * sigma_H)
      throw ConfigInvalid("IdealClockSpec: grid must cover >= 8 sigma around epsilon0");
    if (std::abs(epsilon0) + 4.0 * sigma_H >= pp.rest_energy())
      throw RegimeViolation("IdealClockSpec: energy support must stay below m c^2");
  }
};

inline IdealClockSpec make_ideal_clock(double epsilon0, double sigma_H,
                                       int n_eps = 128,
                                       double half_width_sigmas = 8.0) {
  IdealClockSpec c;
  c.epsilon0 = epsilon0;
  c.sigma_H = sigma_H;
  c.eps_min = epsilon0 - half_width_sigmas * sigma_H;
  c.eps_max = epsilon0 + half_width_sigmas * sigma_H;
  c.n_eps = n_eps;
  return c;
}

// Weighted moments of the internal-energy distribution. For discrete clocks
// the weights are |phi_i|^2; branch-resolved masses are m_i = m + eps_i/c^2.
// These are evaluated exactly (branch sums), never by series expansion, so
// that differences against expanded formulas measure only the truncation.
struct ClockMoments {
  double mean_Hc = 0.0;
  double var_Hc = 0.0;
  double inv_mass = 0.0;    // <m^-1>
  double inv_mass2 = 0.0;   // <m^-2>
  double mbar = 0.0;        // m + <Hc>/c^2
  double lambda = 0.0;      // sqrt(var_Hc)/(m c^2)

  double var_inv_mass() const { return inv_mass2 - inv_mass * inv_mass; }
};

ClockMoments clock_moments(const DiscreteClockSpec& clock, const PhysicalParams& pp);

}  // namespace stqrf
