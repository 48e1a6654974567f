#pragma once

#include <optional>
#include <string>
#include <vector>

#include "commands.hpp"

// Sweep scenarios. The file format is described in docs/scenario-format.md.
namespace wrenyi::app {

struct Axis {
  std::string name;
  std::vector<double> values;
};

struct Scenario {
  std::string id;
  std::string description;
  std::vector<std::string> f, g, w;  // descriptor templates; {name} is replaced by an axis value
  std::vector<Axis> axes;            // p, alpha, c, t feed the orders; other names only fill templates
  std::vector<std::string> measures;  // canonical names
  std::vector<std::string> checks;    // canonical names
  std::optional<double> tol;
  std::string csv_path, json_path;
};

Scenario parse_scenario(const Json& doc);
Scenario load_scenario(const std::string& path);

struct GridPoint {
  size_t index = 0;
  Inputs in;
  std::vector<std::pair<std::string, double>> values;  // one per axis
};

// Cartesian product: f, g, w outermost, then axes in file order; the last
// axis varies fastest.
std::vector<GridPoint> expand(const Scenario& s);
size_t grid_size(const Scenario& s);

struct SweepReport {
  std::vector<std::string> columns;
  std::vector<Json> rows;  // objects keyed by column, in grid order
  size_t errored = 0;
};

SweepReport run_sweep(const Scenario& s, int jobs);
void write_csv(const SweepReport& r, std::ostream& out);
Json to_json(const Scenario& s, const SweepReport& r);

// Writes <prefix>.csv and <prefix>.json (or the scenario's own paths when
// prefix is empty) and returns a summary.
Outcome cmd_sweep(const std::string& scenario_path, int jobs, const std::string& out_prefix);

}  // namespace wrenyi::app
