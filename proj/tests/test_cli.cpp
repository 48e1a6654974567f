#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "criteria.hpp"
#include "scenario.hpp"
#include "wrenyi/density.hpp"
#include "wrenyi/descriptors.hpp"
#include "wrenyi/errors.hpp"

using namespace wrenyi;
using namespace wrenyi::app;

namespace {

Inputs inputs(std::string f, std::string w = "", std::optional<double> p = {}, std::optional<double> alpha = {}) {
  Inputs in;
  in.f = std::move(f);
  in.w = std::move(w);
  in.p = p;
  in.alpha = alpha;
  return in;
}

Json regime_scenario() {
  return Json::parse(R"({
    "id": "regime-a",
    "f": "exp:3.5", "g": "exp:1.5", "w": "expw:{gamma}",
    "grid": {"p": 1, "gamma": {"interior": [-10, -1, 21]}},
    "measures": ["rel-renyi"],
    "checks": ["relative-renyi-nonneg"]
  })");
}

}  // namespace

TEST_CASE("compute: documented values and exit codes") {
  auto wre = cmd_compute("wre", inputs("exp:1", "expw:-0.5", 2.0), false);
  CHECK(wre.exit_code == kOk);
  CHECK(wre.report["result"]["value"].get<double>() == doctest::Approx(std::log(2.5)).epsilon(1e-12));

  auto dev = cmd_compute("deviation", inputs("exp:1", "abspoly:1,-2,-1,2", {}, 1.0), false);
  CHECK(dev.exit_code == kOk);
  CHECK(std::abs(dev.report["result"]["value"].get<double>() - 39.0) <= 1e-9);

  auto bad = cmd_compute("wre", inputs("exp:1", "expw:3", 2.0), false);
  CHECK(bad.exit_code == kDomainError);
  CHECK(bad.report["error"]["kind"] == "domain");

  auto with_oracle = cmd_compute("wre", inputs("exp:1", "expw:-0.5", 2.0), true);
  CHECK(with_oracle.report["oracle"]["pass"] == true);
}

TEST_CASE("compute: input errors exit 2") {
  CHECK(cmd_compute("nonsense", inputs("exp:1"), false).exit_code == kInputError);
  CHECK(cmd_compute("wre", inputs("exp:1"), false).exit_code == kInputError);  // no --p
  CHECK(cmd_compute("wre", inputs("notadensity:1", "", 2.0), false).exit_code == kInputError);
  CHECK(cmd_compute("moment", inputs("exp:1", "bogus"), false).exit_code == kInputError);
}

TEST_CASE("verify: verdicts and aliases") {
  Inputs in = inputs("exp:3.5", "expw:-2", 1.0);
  in.g = "exp:1.5";
  auto v = cmd_verify("thm1.1", in);
  REQUIRE(v.exit_code == kOk);
  CHECK(v.report["check"] == "relative-renyi-nonneg");
  CHECK(v.report["verdicts"][0]["verdict"] == "holds");

  auto tent = cmd_verify("tent-moment-bound", [] {
    Inputs t = inputs("tent");
    t.c = 0.0;
    return t;
  }());
  CHECK(tent.report["verdicts"][0]["equality"] == true);

  auto mei = cmd_verify("mei", inputs("gg:2,2", "const:1", 2.0, 2.0));
  CHECK(mei.report["verdicts"][0]["verdict"] == "holds");

  CHECK(cmd_verify("nonsense", in).exit_code == kInputError);
  // wrong identity for the orders
  CHECK(cmd_verify("gauss-identity-uniform", inputs("", "const:1", 2.0, 2.0)).exit_code == kInputError);
  CHECK(cmd_verify("scaling", inputs("", "pow:1", 2.0, 2.0)).exit_code == kInputError);  // no --t
}

TEST_CASE("repro: known and unknown bundles") {
  CHECK(cmd_repro("no-such-bundle", 42).exit_code == kInputError);
  auto r = cmd_repro("example-1.2", 42);
  CHECK(r.exit_code == kOk);
  CHECK(r.report["id"] == "abspoly-deviation");
  // the parabola check reports its violation rather than passing
  CHECK(cmd_repro("parabola-moment-bound", 42).exit_code == kAcceptanceFailure);
}

TEST_CASE("sweep: grid cardinality and column order") {
  auto s = parse_scenario(regime_scenario());
  CHECK(grid_size(s) == 21);
  const auto pts = expand(s);
  REQUIRE(pts.size() == 21);
  CHECK(pts[0].in.w == "expw:" + format_real(-10.0 + 9.0 / 22.0));

  auto two = regime_scenario();
  two["w"] = Json::array({"expw:{gamma}", "const:1"});
  two["grid"]["q"] = Json::array({1, 2, 3});
  auto s2 = parse_scenario(two);
  CHECK(grid_size(s2) == 2 * 21 * 3);
  const auto p2 = expand(s2);
  CHECK(p2[1].values.back().second == 2.0);  // last axis varies fastest

  const auto rep = run_sweep(s, 3);
  CHECK(rep.rows.size() == 21);
  CHECK(rep.errored == 0);
  CHECK(rep.columns.front() == "index");
  CHECK(rep.columns.back() == "status");
  for (size_t i = 0; i < rep.rows.size(); ++i) CHECK(rep.rows[i]["index"] == i);
}

TEST_CASE("sweep: CSV round trip reproduces the verdicts") {
  const auto s = parse_scenario(regime_scenario());
  const auto rep = run_sweep(s, 2);
  std::stringstream csv;
  write_csv(rep, csv);
  const auto table = read_csv(csv);
  REQUIRE(table.size() == 22);
  const auto& head = table[0];
  auto col = [&](const std::string& name) {
    return static_cast<size_t>(std::find(head.begin(), head.end(), name) - head.begin());
  };
  for (size_t i = 1; i <= 20; ++i) {
    const auto& row = table[i];
    Inputs in;
    in.f = row[col("f")];
    in.g = row[col("g")];
    in.w = row[col("w")];
    in.p = parse_real(row[col("p")], "p");
    const auto v = evaluate_check("relative-renyi-nonneg", in).at(0);
    CHECK(row[col("relative-renyi-nonneg.verdict")] == to_string(v.verdict));
    CHECK(parse_real(row[col("relative-renyi-nonneg.slack")], "slack") == v.slack);
    CHECK(parse_real(row[col("rel-renyi.value")], "value") == evaluate_measure("rel-renyi", in).value);
  }
}

TEST_CASE("sweep: JSON output is deterministic across job counts") {
  const auto s = parse_scenario(regime_scenario());
  CHECK(dump(to_json(s, run_sweep(s, 1))) == dump(to_json(s, run_sweep(s, 4))));
}

TEST_CASE("scenario validation") {
  auto doc = regime_scenario();
  doc["colour"] = "red";
  CHECK_THROWS_AS(parse_scenario(doc), InputError);

  doc = regime_scenario();
  doc["w"] = "expw:{gama}";
  CHECK_THROWS_AS(parse_scenario(doc), InputError);

  doc = regime_scenario();
  doc.erase("measures");
  doc.erase("checks");
  CHECK_THROWS_AS(parse_scenario(doc), InputError);

  doc = regime_scenario();
  doc["checks"] = Json::array({"no-such-check"});
  CHECK_THROWS_AS(parse_scenario(doc), InputError);

  doc = regime_scenario();
  doc["grid"]["status"] = 1;
  CHECK_THROWS_AS(parse_scenario(doc), InputError);

  CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), InputError);
}

TEST_CASE("shipped scenarios parse") {
  const std::filesystem::path dir = WRENYI_SCENARIO_DIR;
  int n = 0;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.path().extension() != ".json") continue;
    CAPTURE(e.path().string());
    CHECK_NOTHROW(load_scenario(e.path().string()));
    ++n;
  }
  CHECK(n >= 4);
}

TEST_CASE("csv quoting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"x\"") == "\"say \"\"x\"\"\"");
  std::stringstream ss;
  write_csv_row(ss, {"gg:1,2", "x\"y", ""});
  const auto back = read_csv(ss);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == std::vector<std::string>{"gg:1,2", "x\"y", ""});
  std::stringstream bad("\"open");
  CHECK_THROWS(read_csv(bad));
}
