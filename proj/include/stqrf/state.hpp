#pragma once
// Joint clock (x) rod states on a momentum grid, plus constructors for the
// state families used throughout: phase-space Gaussians, configuration-space
// minimum-uncertainty states (MUS), contractive Gaussians and ideal-clock
// wavepackets.

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "stqrf/params.hpp"

namespace stqrf {

enum class StateFamily { gaussian_phase_space, mus_configuration_space, contractive, ideal_clock };

// Everything needed to rebuild the state bit-exactly.
struct Preparation {
  StateFamily family = StateFamily::gaussian_phase_space;
  double sigma = 0.0;   // position spread (phase-space Gaussian / contractive)
  double Omega = 0.0;   // MUS frequency scale
  double v0 = 0.0;      // MUS mean velocity
  double p0 = 0.0;      // mean momentum
  double x0 = 0.0;      // mean position
  double gamma = 0.0;   // contractive correlation parameter
  std::string com_family;  // "gaussian" or "mus" (ideal-clock states)
};

struct CompositeState {
  PhysicalParams params;
  MomentumGrid grid;
  std::variant<DiscreteClockSpec, IdealClockSpec> clock;
  // Row-major amplitudes: amp[b * grid.n_points + k] = Psi(p_k, branch b).
  // For a discrete clock the branch amplitude already includes phi_i; for an
  // ideal clock it includes the energy-space Gaussian, and sums over branches
  // carry the quadrature weight d(eps).
  std::vector<cplx> amp;
  Preparation meta;

  bool is_discrete() const { return std::holds_alternative<DiscreteClockSpec>(clock); }
  const DiscreteClockSpec& discrete() const { return std::get<DiscreteClockSpec>(clock); }
  const IdealClockSpec& ideal() const { return std::get<IdealClockSpec>(clock); }

  int n_branches() const {
    return is_discrete() ? static_cast<int>(discrete().levels.size()) : ideal().n_eps;
  }
  double branch_energy(int b) const {
    return is_discrete() ? discrete().levels[b].epsilon : ideal().eps(b);
  }
  // Quadrature weight of the branch sum (1 for discrete levels, d(eps) for
  // the truncated continuum).
  double branch_measure() const { return is_discrete() ? 1.0 : ideal().de(); }
  double branch_mass(int b) const {
    return params.m + branch_energy(b) / (params.c * params.c);
  }

  const cplx* branch(int b) const { return amp.data() + static_cast<std::size_t>(b) * grid.n_points; }
  cplx* branch(int b) { return amp.data() + static_cast<std::size_t>(b) * grid.n_points; }

  double norm_squared() const;
  // sqrt(var_Hc)/(m c^2) of this state (exact branch sums).
  double lambda() const;
};

// Separable state: one Gaussian momentum wavepacket (position spread sigma,
// mean momentum p0, mean position x0) times the internal amplitudes.
CompositeState make_gaussian_phase_space(const PhysicalParams& pp, const MomentumGrid& grid,
                                         const DiscreteClockSpec& clock, double sigma,
                                         double p0, double x0);

// Entangled MUS: branch b carries a Gaussian of mean m_b*v0 and momentum
// variance m_b*hbar*Omega/2, so all branches share the mean velocity v0.
CompositeState make_mus_configuration_space(const PhysicalParams& pp, const MomentumGrid& grid,
                                            const DiscreteClockSpec& clock, double Omega,
                                            double v0, double x0);

// Phase-space-correlated Gaussian with Cov(x,p) = -hbar*gamma (gamma > 0
// gives a transiently contracting position spread).
CompositeState make_contractive(const PhysicalParams& pp, const MomentumGrid& grid,
                                const DiscreteClockSpec& clock, double sigma, double gamma);

// Ideal-clock state Psi(p,eps) = psi(p,eps) * phi(eps), with phi a Gaussian
// of mean epsilon0 and spread sigma_H, and psi either a shared phase-space
// Gaussian ("gaussian") or the branch-matched MUS packet ("mus").
struct IdealComParams {
  double sigma = 1.0;   // used by com_family "gaussian"
  double p0 = 0.0;
  double Omega = 1.0;   // used by com_family "mus"
  double v0 = 0.0;
  double x0 = 0.0;
};
CompositeState make_ideal_clock_state(const PhysicalParams& pp, const MomentumGrid& grid,
                                      const IdealClockSpec& clock, const std::string& com_family,
                                      const IdealComParams& fp);

// Free system particle used by the relational observable.
struct SystemSpec {
  double m_s = 1.0;
  MomentumGrid grid_s;
  std::vector<cplx> amp_s;  // chi(p_s)
};

SystemSpec make_system_gaussian(double m_s, const MomentumGrid& grid, double sigma,
                                double p0, double x0, double hbar);

ClockMoments clock_moments(const CompositeState& st);

}  // namespace stqrf
