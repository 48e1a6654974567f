#include "report.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include "wrenyi/errors.hpp"

namespace wrenyi::app {

Json real(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

namespace {

Json named(const std::vector<std::pair<std::string, double>>& parts) {
  Json j = Json::object();
  for (const auto& [k, v] : parts) j[k] = real(v);
  return j;
}

}  // namespace

Json to_json(const Flag& f) {
  Json j;
  j["name"] = f.name;
  j["margin"] = real(f.margin);
  j["strict"] = f.strict;
  j["satisfied"] = f.satisfied();
  return j;
}

Json to_json(const MeasureValue& m) {
  Json j;
  j["value"] = real(m.value);
  j["error"] = real(m.error);
  j["branch"] = m.branch;
  j["method"] = m.method;
  j["status"] = num::to_string(m.status);
  j["flags"] = Json::array();
  for (const auto& f : m.flags) j["flags"].push_back(to_json(f));
  j["parts"] = named(m.parts);
  j["warnings"] = m.warnings;
  return j;
}

Json to_json(const InequalityVerdict& v) {
  Json j;
  j["id"] = v.id;
  j["verdict"] = to_string(v.verdict);
  j["lhs"] = real(v.lhs);
  j["rhs"] = real(v.rhs);
  j["slack"] = real(v.slack);
  j["error"] = real(v.error);
  j["tolerance"] = real(v.tolerance);
  j["equality"] = v.equality;
  j["margins"] = Json::array();
  for (const auto& f : v.margins) j["margins"].push_back(to_json(f));
  j["terms"] = named(v.terms);
  j["notes"] = v.notes;
  return j;
}

Json to_json(const IdentityResidual& r) {
  Json j;
  j["id"] = to_string(r.id);
  j["lhs"] = real(r.lhs);
  j["rhs"] = real(r.rhs);
  j["residual"] = real(r.residual);
  j["parts"] = named(r.parts);
  return j;
}

Json to_json(const GaussianMeasureSet& g) {
  Json j;
  j["branch"] = to_string(g.tag);
  j["power"] = real(g.power);
  j["deviation"] = real(g.deviation);
  j["fisher"] = g.has_fisher ? real(g.fisher) : Json(nullptr);
  j["expectation"] = real(g.expectation);
  j["parts"] = named(g.parts);
  j["notes"] = g.notes;
  return j;
}

Json to_json(const oracle::CrossCheck& c) {
  Json j;
  j["name"] = c.name;
  j["library"] = real(c.library);
  j["oracle"] = real(c.oracle);
  j["oracle_error"] = real(c.oracle_error);
  j["rel_diff"] = real(c.rel_diff);
  j["pass"] = c.pass;
  if (!c.error.empty()) j["error"] = c.error;
  return j;
}

std::string dump(const Json& j) { return j.dump(2); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& row) {
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) out << ',';
    out << csv_field(row[i]);
  }
  out << "\r\n";
}

std::vector<std::vector<std::string>> read_csv(std::istream& in) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool quoted = false, any = false;
  char c;
  while (in.get(c)) {
    any = true;
    if (quoted) {
      if (c == '"') {
        if (in.peek() == '"') {
          in.get(c);
          field += '"';
        } else {
          quoted = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
    } else if (c == '\r') {
      // part of the CRLF terminator
    } else if (c == '\n') {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      any = false;
    } else {
      field += c;
    }
  }
  if (quoted) throw InputError("csv: unterminated quoted field");
  if (any) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace wrenyi::app
