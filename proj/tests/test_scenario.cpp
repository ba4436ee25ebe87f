#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stqrf/errors.hpp"
#include "stqrf/scenario.hpp"

using namespace stqrf;
namespace fs = std::filesystem;

namespace {
std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
}  // namespace

TEST_CASE("config parsing") {
  const auto s = parse_scenario_text("# comment\nscenario = salecker-wigner\n t_max = 2.0 \n");
  CHECK(s.name == "salecker-wigner");
  CHECK(s.kv.at("t_max") == "2.0");
  CHECK_THROWS_AS(parse_scenario_text("t_max = 1.0\n"), ConfigInvalid);       // no scenario key
  CHECK_THROWS_AS(parse_scenario_text("scenario = x\nfoo\n"), ConfigInvalid); // malformed line
  CHECK_THROWS_AS(parse_scenario_text("scenario = x\na = 1\na = 2\n"), ConfigInvalid);
}

TEST_CASE("bundled scenarios") {
  const auto names = bundled_scenario_names();
  CHECK(names.size() == 6);
  for (const auto& n : names) {
    CHECK(bundled_scenario_text(n).has_value());
    CHECK(load_scenario(n).name == n);
  }
  CHECK(!bundled_scenario_text("no_such_thing").has_value());
}

TEST_CASE("run_scenario writes deterministic CSV with provenance") {
  const fs::path dir = fs::temp_directory_path() / "stqrf_test_scenario";
  fs::create_directories(dir);
  CHECK(run_scenario("salecker-wigner", dir.string(), std::cerr) == 0);
  const fs::path csv = dir / "salecker-wigner.csv";
  const fs::path svg = dir / "salecker-wigner.svg";
  REQUIRE(fs::exists(csv));
  CHECK(fs::exists(svg));
  const std::string first = slurp(csv);
  CHECK(first.rfind("# ", 0) == 0);                         // provenance header
  CHECK(first.find("config_hash=") != std::string::npos);
  CHECK(first.find("\r\n") != std::string::npos);           // CRLF records
  CHECK(first.find("t_time") != std::string::npos);         // units-suffixed column

  CHECK(run_scenario("salecker-wigner", dir.string(), std::cerr) == 0);
  CHECK(slurp(csv) == first);  // byte-identical rerun

  CHECK(run_scenario("no_such_scenario", dir.string(), std::cerr) == 2);
  fs::remove_all(dir);
}

TEST_CASE("unknown config keys are rejected") {
  const fs::path dir = fs::temp_directory_path() / "stqrf_test_badkey";
  fs::create_directories(dir);
  const fs::path cfg = dir / "bad.cfg";
  std::ofstream(cfg) << "scenario = salecker-wigner\nnot_a_key = 1\n";
  CHECK(run_scenario(cfg.string(), dir.string(), std::cerr) == 2);
  CHECK(!fs::exists(dir / "salecker-wigner.csv"));  // no partial outputs
  fs::remove_all(dir);
}
