#include <cstdlib>
#include <iostream>
#include <string>

#include <omp.h>

#include "CLI11.hpp"
#include "stqrf/acceptance.hpp"
#include "stqrf/scenario.hpp"

int main(int argc, char** argv) {
  if (const char* env = std::getenv("STQRF_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) omp_set_num_threads(n);
  }

  CLI::App app{"stqrf: spatial and temporal resolution limits of a composite "
               "quantum reference frame"};
  app.require_subcommand(1);

  std::string config, out_dir = ".";
  auto* run = app.add_subcommand("run", "run a scenario config and write CSV/SVG");
  run->add_option("config", config, "bundled scenario name or config file path")->required();
  run->add_option("--out", out_dir, "output directory (default: current)");

  std::uint64_t seed = 20240915;
  auto* accept = app.add_subcommand("accept", "run the acceptance suite");
  accept->add_option("--seed", seed, "sampler seed");

  auto* list = app.add_subcommand("list-scenarios", "list bundled scenario names");

  CLI11_PARSE(app, argc, argv);

  if (list->parsed()) {
    for (const auto& n : stqrf::bundled_scenario_names()) std::cout << n << "\n";
    return 0;
  }
  if (accept->parsed()) {
    const auto results = stqrf::run_acceptance(seed);
    return stqrf::report_acceptance(results, std::cout) ? 0 : 1;
  }
  return stqrf::run_scenario(config, out_dir, std::cerr);
}
