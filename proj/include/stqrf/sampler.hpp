#pragma once
// Seeded random state generation for the Monte-Carlo property suites:
// log-uniform in the energy-scale ratio lambda and in the width parameter,
// uniform in the qubit mixing angle.

#include <random>

#include "stqrf/state.hpp"

namespace stqrf {

struct SampleConstraints {
  double lambda_min = 0.01;
  double lambda_max = 0.2;
  // Lower width bound keeps the 10-sigma momentum box inside the region where
  // the first-order dilation factor stays positive (|p| < sqrt(2) m c).
  double width_min = 0.5;   // sigma (Gaussian) or 1/sqrt(Omega m) scale (MUS)
  double width_max = 3.0;
  double p0_max = 0.0;      // 0 keeps samples symmetric / rest frame
  bool include_mus = true;
  bool include_gaussian = true;
  int n_points = 1024;
};

class StateSampler {
 public:
  explicit StateSampler(std::uint64_t seed, SampleConstraints cons = {})
      : rng_(seed), cons_(cons) {}

  CompositeState sample(const PhysicalParams& pp);

 private:
  std::mt19937_64 rng_;
  SampleConstraints cons_;
};

}  // namespace stqrf
