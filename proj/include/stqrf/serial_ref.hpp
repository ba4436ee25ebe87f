#pragma once
// Plain single-threaded reference implementations of the hot kernels
// (evolution phase application and moment quadratures). The production
// versions in oracle.cpp run the same math under OpenMP; the unit tests
// assert bitwise-tolerant agreement and the benchmark compares throughput.

#include "stqrf/oracle.hpp"

namespace stqrf::serial {

CompositeState evolve(const CompositeState& st, double t, HamiltonianOrder order);
MomentReport compute_moments(const CompositeState& st, double t = 0.0,
                             HamiltonianOrder order = HamiltonianOrder::exact);

}  // namespace stqrf::serial
