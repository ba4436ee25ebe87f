#pragma once
// Error types thrown by the stqrf library. All derive from stqrf::Error so
// callers (and the CLI) can map them to exit codes in one place.

#include <stdexcept>
#include <string>

namespace stqrf {

struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A constructed state does not fit the momentum box (edge amplitude too large).
struct GridOverflow : Error {
  explicit GridOverflow(const std::string& msg) : Error(msg) {}
};

// A perturbative result was requested outside its validity regime
// (e.g. internal-energy scale too large relative to the rest energy).
struct RegimeViolation : Error {
  explicit RegimeViolation(const std::string& msg) : Error(msg) {}
};

// An operation that assumes a phase-space-symmetric state (Cov(x,v)=0) was
// handed a correlated one.
struct SymmetryViolation : Error {
  explicit SymmetryViolation(const std::string& msg) : Error(msg) {}
};

// The two finite-difference stencil orders disagree beyond tolerance,
// i.e. the grid is too coarse for the requested derivative.
struct DerivativeNoise : Error {
  explicit DerivativeNoise(const std::string& msg) : Error(msg) {}
};

// threshold_time scanned up to t_max without the trace distance reaching delta.
struct NotReached : Error {
  explicit NotReached(double t_max_)
      : Error("trace-distance threshold not reached within t_max=" +
              std::to_string(t_max_)),
        t_max(t_max_) {}
  double t_max;
};

struct ZeroSpread : Error {
  explicit ZeroSpread(const std::string& msg) : Error(msg) {}
};

// The momentum grid reaches into the region where the time dilation factor
// 1 - p^2/2m^2c^2 is non-positive.
struct NegativeDilation : Error {
  explicit NegativeDilation(const std::string& msg) : Error(msg) {}
};

struct DilationNonPositive : Error {
  explicit DilationNonPositive(const std::string& msg) : Error(msg) {}
};

struct ConfigInvalid : Error {
  explicit ConfigInvalid(const std::string& msg) : Error(msg) {}
};

}  // namespace stqrf
