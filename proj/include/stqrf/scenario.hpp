#pragma once
// Batch front door: declarative scenario configs, CSV/SVG emission, bundled
// scenarios and the acceptance suite entry point.

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace stqrf {

// Key-value config: `key = value` lines, `#` comments, keys documented in
// the README. Unknown keys are rejected.
struct Scenario {
  std::string name;
  std::map<std::string, std::string> kv;
};

Scenario parse_scenario_text(const std::string& text);
Scenario load_scenario(const std::string& path_or_name);  // file path or bundled name

std::vector<std::string> bundled_scenario_names();
std::optional<std::string> bundled_scenario_text(const std::string& name);

struct ResultTable {
  std::vector<std::string> columns;  // names with units suffixes, e.g. "t_time"
  std::vector<std::vector<double>> rows;
  std::vector<std::string> provenance;  // "key=value" lines
};

// Runs the scenario and writes <name>.csv / <name>.svg into out_dir.
// Returns 0 on success, 2 on validation failure, 3 on regime violation.
int run_scenario(const std::string& path_or_name, const std::string& out_dir,
                 std::ostream& log);

void write_csv(const ResultTable& table, const std::string& path);
void write_svg_lines(const ResultTable& table, const std::string& path,
                     int x_column = 0);

}  // namespace stqrf
