#include <iostream>

#include "stqrf/acceptance.hpp"

int main() {
  const auto results = stqrf::run_acceptance();
  return stqrf::report_acceptance(results, std::cout) ? 0 : 1;
}
