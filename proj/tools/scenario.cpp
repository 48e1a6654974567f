#include "scenario.hpp"

#include <atomic>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "wrenyi/descriptors.hpp"
#include "wrenyi/errors.hpp"

namespace wrenyi::app {

namespace {

const std::set<std::string> kOrderAxes = {"p", "alpha", "c", "t"};

double number(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_real(v.get<std::string>(), where);
  throw InputError(where + ": expected a number");
}

std::vector<std::string> strings(const Json& v, const std::string& key) {
  std::vector<std::string> out;
  if (v.is_string()) {
    out.push_back(v.get<std::string>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_string()) throw InputError("scenario: '" + key + "' entries must be strings");
      out.push_back(e.get<std::string>());
    }
  } else {
    throw InputError("scenario: '" + key + "' must be a string or a list of strings");
  }
  return out;
}

std::vector<double> axis_values(const Json& v, const std::string& name) {
  const std::string where = "scenario grid '" + name + "'";
  std::vector<double> out;
  if (v.is_number() || v.is_string()) {
    out.push_back(number(v, where));
  } else if (v.is_array()) {
    for (const auto& e : v) out.push_back(number(e, where));
  } else if (v.is_object()) {
    if (v.size() != 1) throw InputError(where + ": use exactly one of linspace, interior");
    const auto& [kind, spec] = *v.items().begin();
    if (kind != "linspace" && kind != "interior") throw InputError(where + ": unknown generator '" + kind + "'");
    if (!spec.is_array() || spec.size() != 3) throw InputError(where + ": expected [lo, hi, n]");
    const double lo = number(spec[0], where), hi = number(spec[1], where);
    const double nd = number(spec[2], where);
    if (nd < 1 || nd != std::floor(nd) || nd > 1e6) throw InputError(where + ": n must be a positive integer");
    const int n = static_cast<int>(nd);
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw InputError(where + ": bounds must be finite");
    for (int i = 0; i < n; ++i) {
      if (kind == "linspace") out.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
      else out.push_back(lo + (hi - lo) * (i + 1) / (n + 1));
    }
  } else {
    throw InputError(where + ": expected a number, a list or a generator object");
  }
  if (out.empty()) throw InputError(where + ": empty");
  return out;
}

bool identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
  return true;
}

std::string substitute(const std::string& tmpl, const std::vector<std::pair<std::string, double>>& values) {
  std::string s = tmpl;
  for (const auto& [name, v] : values) {
    const std::string key = "{" + name + "}";
    for (size_t pos; (pos = s.find(key)) != std::string::npos;) s.replace(pos, key.size(), format_real(v));
  }
  if (s.find('{') != std::string::npos || s.find('}') != std::string::npos)
    throw InputError("scenario: unresolved placeholder in '" + tmpl + "'");
  return s;
}

std::vector<std::string> measure_columns(const std::string& m) {
  return {m + ".value", m + ".error", m + ".branch", m + ".method", m + ".status", m + ".flags", m + ".message"};
}

std::vector<std::string> verdict_columns(const std::string& v) {
  return {v + ".verdict", v + ".lhs",        v + ".rhs",     v + ".slack",  v + ".error",
          v + ".equality", v + ".min_margin", v + ".margins", v + ".message"};
}

std::string flag_list(const std::vector<Flag>& flags) {
  std::string s;
  for (const auto& f : flags) s += (s.empty() ? "" : ";") + f.name + "=" + format_real(f.margin);
  return s;
}

Json evaluate_row(const Scenario& s, const GridPoint& gp, bool* failed) {
  Json row;
  row["index"] = gp.index;
  for (auto [key, val] : {std::pair{"f", &gp.in.f}, {"g", &gp.in.g}, {"w", &gp.in.w}})
    row[key] = val->empty() ? Json() : Json(*val);
  for (const char* k : {"p", "alpha", "c", "t"}) row[k] = nullptr;
  for (const auto& [name, v] : gp.values) row[name] = real(v);
  for (const auto& m : s.measures) {
    try {
      const auto mv = evaluate_measure(m, gp.in);
      row[m + ".value"] = real(mv.value);
      row[m + ".error"] = real(mv.error);
      row[m + ".branch"] = mv.branch;
      row[m + ".method"] = mv.method;
      row[m + ".status"] = num::to_string(mv.status);
      row[m + ".flags"] = flag_list(mv.flags);
      row[m + ".message"] = "";
    } catch (const std::exception& e) {
      *failed = true;
      for (const auto& c : measure_columns(m)) row[c] = nullptr;
      row[m + ".status"] = "error";
      row[m + ".message"] = e.what();
    }
  }
  for (const auto& c : s.checks) {
    const auto ids = verdict_ids(c);
    std::vector<InequalityVerdict> vs;
    std::string message;
    try {
      vs = evaluate_check(c, gp.in);
    } catch (const std::exception& e) {
      *failed = true;
      message = e.what();
    }
    for (const auto& id : ids) {
      for (const auto& col : verdict_columns(id)) row[col] = nullptr;
      const auto it = std::find_if(vs.begin(), vs.end(), [&](const auto& v) { return v.id == id; });
      if (it == vs.end()) {
        row[id + ".verdict"] = message.empty() ? "skipped" : "error";
        row[id + ".message"] = message;
        continue;
      }
      double min_margin = std::numeric_limits<double>::infinity();
      for (const auto& m : it->margins) min_margin = std::min(min_margin, m.margin);
      row[id + ".verdict"] = to_string(it->verdict);
      row[id + ".lhs"] = real(it->lhs);
      row[id + ".rhs"] = real(it->rhs);
      row[id + ".slack"] = real(it->slack);
      row[id + ".error"] = real(it->error);
      row[id + ".equality"] = it->equality;
      row[id + ".min_margin"] = it->margins.empty() ? Json(nullptr) : real(min_margin);
      row[id + ".margins"] = flag_list(it->margins);
      row[id + ".message"] = "";
    }
  }
  row["status"] = *failed ? "error" : "ok";
  return row;
}

// Odometer step, last axis fastest; false after the last combination.
bool advance(std::vector<size_t>& idx, const std::vector<Axis>& axes) {
  for (size_t k = idx.size(); k-- > 0;) {
    if (++idx[k] < axes[k].values.size()) return true;
    idx[k] = 0;
  }
  return false;
}

std::string cell(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_unsigned()) return std::to_string(v.get<std::uint64_t>());
  if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
  return format_real(v.get<double>());
}

}  // namespace

Scenario parse_scenario(const Json& doc) {
  if (!doc.is_object()) throw InputError("scenario: top level must be an object");
  static const std::set<std::string> known = {"id", "description", "f", "g", "w", "grid",
                                              "measures", "checks", "tol", "output"};
  for (const auto& [k, v] : doc.items())
    if (!known.contains(k)) throw InputError("scenario: unknown key '" + k + "'");
  Scenario s;
  if (!doc.contains("id") || !doc["id"].is_string() || doc["id"].get<std::string>().empty())
    throw InputError("scenario: 'id' (non-empty string) is required");
  s.id = doc["id"];
  if (doc.contains("description")) {
    if (!doc["description"].is_string()) throw InputError("scenario: 'description' must be a string");
    s.description = doc["description"];
  }
  if (!doc.contains("f")) throw InputError("scenario: 'f' is required");
  s.f = strings(doc["f"], "f");
  if (doc.contains("g")) s.g = strings(doc["g"], "g");
  if (doc.contains("w")) s.w = strings(doc["w"], "w");
  if (s.f.empty()) throw InputError("scenario: 'f' is empty");
  if (doc.contains("grid")) {
    if (!doc["grid"].is_object()) throw InputError("scenario: 'grid' must be an object");
    for (const auto& [name, v] : doc["grid"].items()) {
      if (!identifier(name)) throw InputError("scenario: grid axis '" + name + "' is not an identifier");
      if (name == "index" || name == "f" || name == "g" || name == "w" || name == "status")
        throw InputError("scenario: grid axis name '" + name + "' is reserved");
      s.axes.push_back({name, axis_values(v, name)});
    }
  }
  if (doc.contains("measures"))
    for (const auto& m : strings(doc["measures"], "measures")) s.measures.push_back(canonical_measure(m));
  if (doc.contains("checks"))
    for (const auto& c : strings(doc["checks"], "checks")) s.checks.push_back(canonical_check(c));
  if (s.measures.empty() && s.checks.empty()) throw InputError("scenario: give at least one measure or check");
  if (doc.contains("tol")) {
    s.tol = number(doc["tol"], "scenario tol");
    if (!(*s.tol > 0.0)) throw InputError("scenario: 'tol' must be positive");
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (!o.is_object()) throw InputError("scenario: 'output' must be an object");
    for (const auto& [k, v] : o.items()) {
      if (k != "csv" && k != "json") throw InputError("scenario: unknown output key '" + k + "'");
      if (!v.is_string()) throw InputError("scenario: output paths must be strings");
      (k == "csv" ? s.csv_path : s.json_path) = v.get<std::string>();
    }
  }

  // Descriptors must parse at the first grid point.
  std::vector<std::pair<std::string, double>> first;
  for (const auto& a : s.axes) first.push_back({a.name, a.values.front()});
  for (const auto& t : s.f) {
    const auto f = parse_density(substitute(t, first));
    for (const auto& w : s.w) parse_weight(substitute(w, first), &f);
  }
  for (const auto& t : s.g) parse_density(substitute(t, first));
  return s;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file: " + path);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
  return parse_scenario(doc);
}

size_t grid_size(const Scenario& s) {
  size_t n = s.f.size() * std::max<size_t>(1, s.g.size()) * std::max<size_t>(1, s.w.size());
  for (const auto& a : s.axes) n *= a.values.size();
  return n;
}

std::vector<GridPoint> expand(const Scenario& s) {
  std::vector<GridPoint> out;
  const std::vector<std::string> gs = s.g.empty() ? std::vector<std::string>{""} : s.g;
  const std::vector<std::string> ws = s.w.empty() ? std::vector<std::string>{""} : s.w;
  const size_t n = grid_size(s);
  out.reserve(n);
  std::vector<size_t> idx(s.axes.size(), 0);
  for (const auto& f : s.f)
    for (const auto& g : gs)
      for (const auto& w : ws) {
        std::fill(idx.begin(), idx.end(), 0);
        do {
          GridPoint gp;
          gp.index = out.size();
          for (size_t k = 0; k < s.axes.size(); ++k) gp.values.push_back({s.axes[k].name, s.axes[k].values[idx[k]]});
          gp.in.f = substitute(f, gp.values);
          gp.in.g = g.empty() ? "" : substitute(g, gp.values);
          gp.in.w = w.empty() ? "" : substitute(w, gp.values);
          gp.in.tol = s.tol;
          for (const auto& [name, v] : gp.values) {
            if (name == "p") gp.in.p = v;
            else if (name == "alpha") gp.in.alpha = v;
            else if (name == "c") gp.in.c = v;
            else if (name == "t") gp.in.t = v;
          }
          out.push_back(std::move(gp));
        } while (advance(idx, s.axes));
      }
  return out;
}

SweepReport run_sweep(const Scenario& s, int jobs) {
  if (jobs < 1) throw InputError("--jobs must be at least 1");
  const auto points = expand(s);
  SweepReport r;
  r.columns = {"index", "f", "g", "w", "p", "alpha", "c", "t"};
  for (const auto& a : s.axes)
    if (!kOrderAxes.contains(a.name)) r.columns.push_back(a.name);
  for (const auto& m : s.measures)
    for (auto& c : measure_columns(m)) r.columns.push_back(std::move(c));
  for (const auto& c : s.checks)
    for (const auto& id : verdict_ids(c))
      for (auto& col : verdict_columns(id)) r.columns.push_back(std::move(col));
  r.columns.push_back("status");

  r.rows.resize(points.size());
  std::vector<char> failed(points.size(), 0);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next.fetch_add(1)) < points.size();) {
      bool f = false;
      Json row = evaluate_row(s, points[i], &f);
      // reorder to the column list
      Json ordered;
      for (const auto& c : r.columns) ordered[c] = row.contains(c) ? row[c] : Json(nullptr);
      r.rows[i] = std::move(ordered);
      failed[i] = f;
    }
  };
  const int n = std::min<int>(jobs, static_cast<int>(std::max<size_t>(1, points.size())));
  std::vector<std::jthread> pool;
  for (int k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  pool.clear();
  for (char f : failed) r.errored += f;
  return r;
}

void write_csv(const SweepReport& r, std::ostream& out) {
  write_csv_row(out, r.columns);
  for (const auto& row : r.rows) {
    std::vector<std::string> cells;
    cells.reserve(r.columns.size());
    for (const auto& c : r.columns) cells.push_back(cell(row[c]));
    write_csv_row(out, cells);
  }
}

Json to_json(const Scenario& s, const SweepReport& r) {
  Json j;
  j["scenario"] = s.id;
  j["description"] = s.description;
  j["grid_size"] = r.rows.size();
  j["errored_rows"] = r.errored;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  return j;
}

Outcome cmd_sweep(const std::string& path, int jobs, const std::string& prefix) {
  Outcome out;
  try {
    const auto s = load_scenario(path);
    const auto r = run_sweep(s, jobs);
    std::string csv = prefix.empty() ? s.csv_path : prefix + ".csv";
    std::string json = prefix.empty() ? s.json_path : prefix + ".json";
    if (csv.empty()) csv = s.id + ".csv";
    if (json.empty()) json = s.id + ".json";
    {
      std::ofstream f(csv, std::ios::binary);
      if (!f) throw InputError("cannot write " + csv);
      write_csv(r, f);
    }
    {
      std::ofstream f(json, std::ios::binary);
      if (!f) throw InputError("cannot write " + json);
      f << dump(to_json(s, r)) << "\n";
    }
    Json j;
    j["command"] = "sweep";
    j["scenario"] = s.id;
    j["rows"] = r.rows.size();
    j["errored_rows"] = r.errored;
    j["csv"] = csv;
    j["json"] = json;
    out.report = std::move(j);
    out.exit_code = r.errored ? kDomainError : kOk;
  } catch (const std::exception& e) {
    out.report = error_json(e);
    out.exit_code = exit_code(e);
  }
  return out;
}

}  // namespace wrenyi::app
