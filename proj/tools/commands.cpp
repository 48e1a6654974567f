#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "wrenyi/descriptors.hpp"
#include "wrenyi/errors.hpp"
#include "wrenyi/gaussian_forms.hpp"
#include "wrenyi/oracle.hpp"

namespace wrenyi::app {

namespace {

struct Alias {
  const char* name;
  const char* canonical;
};

// Short and numbered names accepted on the command line.
constexpr Alias kMeasureAliases[] = {
    {"deviation", "dev"}, {"entropy", "we"}, {"renyi", "wre"}, {"power", "wrp"}, {"relative-renyi", "rel-renyi"},
};

constexpr Alias kCheckAliases[] = {
    {"thm1.1", "relative-renyi-nonneg"},
    {"cor1", "mei-power-weight"},
    {"cor2", "tent-moment-bound"},
    {"cor3", "parabola-moment-bound"},
    {"cor4", "laplace-transport-bound"},
    {"lemma4", "parts"},
    {"id2.11", "gauss-identity-p-gt-1"},
    {"id2.14", "gauss-identity-p-lt-1"},
    {"id2.18", "gauss-identity-p-eq-1"},
    {"id2.22", "gauss-identity-uniform"},
};

std::string lookup(std::string_view id, const std::vector<std::string>& names, const auto& aliases,
                   const char* what) {
  for (const auto& n : names)
    if (n == id) return n;
  for (const auto& a : aliases)
    if (id == a.name) return a.canonical;
  std::string known;
  for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
  throw InputError("unknown " + std::string(what) + " '" + std::string(id) + "' (known: " + known + ")");
}

double need(const std::optional<double>& v, const char* flag, const std::string& who) {
  if (!v) throw InputError(who + " needs " + flag);
  return *v;
}

Density need_density(const std::string& text, const char* flag, const std::string& who) {
  if (text.empty()) throw InputError(who + " needs " + flag);
  return parse_density(text);
}

WeightFunction weight_of(const Inputs& in, const Density* f) {
  return parse_weight(in.w.empty() ? "const:1" : in.w, f);
}

MeasureValue from_gaussian(const GaussianMeasureSet& g) {
  MeasureValue m;
  m.value = g.power;
  m.branch = to_string(g.tag);
  m.method = "semi-closed-form";
  m.parts = {{"deviation", g.deviation}, {"expectation", g.expectation}};
  if (g.has_fisher) m.parts.push_back({"fisher", g.fisher});
  for (const auto& p : g.parts) m.parts.push_back(p);
  m.warnings = g.notes;
  return m;
}

InequalityVerdict residual_verdict(std::string id, double lhs, double rhs, double residual, double tol,
                                   std::vector<std::pair<std::string, double>> terms) {
  InequalityVerdict v;
  v.id = std::move(id);
  v.lhs = lhs;
  v.rhs = rhs;
  v.slack = rhs - lhs;
  v.tolerance = tol;
  v.equality = residual <= tol;
  v.verdict = v.equality ? Verdict::holds : Verdict::violated;
  v.terms = std::move(terms);
  v.terms.insert(v.terms.begin(), {"residual", residual});
  return v;
}

}  // namespace

Json to_json(const Inputs& in) {
  Json j;
  auto opt = [](const std::optional<double>& v) { return v ? real(*v) : Json(nullptr); };
  j["f"] = in.f.empty() ? Json(nullptr) : Json(in.f);
  j["g"] = in.g.empty() ? Json(nullptr) : Json(in.g);
  j["w"] = in.w.empty() ? Json("const:1") : Json(in.w);
  j["p"] = opt(in.p);
  j["alpha"] = opt(in.alpha);
  j["c"] = opt(in.c);
  j["t"] = opt(in.t);
  j["tol"] = opt(in.tol);
  return j;
}

const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names = {"expectation", "power-integral", "we",     "rel-we",
                                                 "wre",         "wrp",            "rel-renyi", "rel-renyi-power",
                                                 "moment",      "dev",            "fisher", "wfi",
                                                 "gauss"};
  return names;
}

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names = {
      "relative-renyi-nonneg", "mei",   "mei-power-weight",      "tent-moment-bound",     "parabola-moment-bound",
      "fii",                   "cri",   "laplace-transport-bound", "scaling",             "parts",
      "gauss-identity-p-gt-1", "gauss-identity-p-lt-1", "gauss-identity-p-eq-1", "gauss-identity-uniform"};
  return names;
}

std::string canonical_measure(std::string_view id) {
  return lookup(id, measure_names(), kMeasureAliases, "measure");
}

std::string canonical_check(std::string_view id) { return lookup(id, check_names(), kCheckAliases, "check"); }

std::vector<std::string> verdict_ids(const std::string& check) {
  if (check == "mei-power-weight") return {"mei-power-weight", "mei-power-weight-laplace"};
  if (check == "laplace-transport-bound")
    return {"laplace-transport-bound-power", "laplace-transport-bound-exponential"};
  return {check};
}

MeasureValue evaluate_measure(const std::string& m, const Inputs& in) {
  if (m == "gauss") {
    const auto phi = weight_of(in, nullptr);
    return from_gaussian(gaussian_measures(phi, need(in.alpha, "--alpha", m), need(in.p, "--p", m)));
  }
  const Density f = need_density(in.f, "--f", m);
  const auto phi = weight_of(in, &f);
  if (m == "expectation") return weighted_expectation(f, phi);
  if (m == "power-integral") return weighted_power_integral(f, phi, need(in.p, "--p", m));
  if (m == "we") return weighted_entropy(f, phi);
  if (m == "wre") return weighted_renyi_entropy(f, phi, need(in.p, "--p", m));
  if (m == "wrp") return weighted_renyi_power(f, phi, need(in.p, "--p", m));
  if (m == "moment") return generalized_moment(f, phi, need(in.alpha, "--alpha", m));
  if (m == "dev") return generalized_deviation(f, phi, need(in.alpha, "--alpha", m));
  if (m == "fisher") return fisher_information(f, need(in.alpha, "--alpha", m), need(in.p, "--p", m));
  if (m == "wfi") return weighted_fisher_information(f, phi, need(in.alpha, "--alpha", m), need(in.p, "--p", m));
  const Density g = need_density(in.g, "--g", m);
  if (m == "rel-we") return relative_weighted_entropy(f, g, phi);
  if (m == "rel-renyi") return relative_renyi_entropy(f, g, phi, need(in.p, "--p", m));
  if (m == "rel-renyi-power") return relative_renyi_power(f, g, phi, need(in.p, "--p", m));
  throw InputError("unknown measure '" + m + "'");
}

std::vector<InequalityVerdict> evaluate_check(const std::string& id, const Inputs& in) {
  VerdictOptions opt;
  if (in.tol) {
    if (!(*in.tol > 0.0)) throw InputError("--tol must be positive");
    opt.tol = *in.tol;
  }
  if (id.starts_with("gauss-identity")) {
    const double alpha = need(in.alpha, "--alpha", id), p = need(in.p, "--p", id);
    const auto which = identity_for(classify_gaussian(alpha, p));
    if (to_string(which) != id)
      throw InputError(id + " does not apply at alpha=" + format_real(alpha) + ", p=" + format_real(p) +
                       " (use " + to_string(which) + ")");
    const auto r = verify_identity(which, weight_of(in, nullptr), alpha, p);
    return {residual_verdict(id, r.lhs, r.rhs, r.residual, in.tol.value_or(1e-5), r.parts)};
  }
  if (id == "scaling") {
    const auto r = check_scaling_identity(weight_of(in, nullptr), need(in.alpha, "--alpha", id),
                                          need(in.p, "--p", id), need(in.t, "--t", id));
    return {residual_verdict(id, r.lhs, r.rhs, r.residual, in.tol.value_or(1e-7), {})};
  }

  const Density f = need_density(in.f, "--f", id);
  if (id == "relative-renyi-nonneg")
    return {check_relative_renyi(f, need_density(in.g, "--g", id), weight_of(in, &f), need(in.p, "--p", id), opt)};
  if (id == "mei") return {check_mei(f, weight_of(in, &f), need(in.alpha, "--alpha", id), need(in.p, "--p", id), opt)};
  if (id == "fii") return {check_fii(f, weight_of(in, &f), need(in.alpha, "--alpha", id), need(in.p, "--p", id), opt)};
  if (id == "cri") return {check_cri(f, weight_of(in, &f), need(in.alpha, "--alpha", id), need(in.p, "--p", id), opt)};
  if (id == "mei-power-weight")
    return check_cor1(f, need(in.c, "--c", id), need(in.alpha, "--alpha", id), need(in.p, "--p", id), opt);
  if (id == "tent-moment-bound") return {check_cor2(f, need(in.c, "--c", id), opt)};
  if (id == "parabola-moment-bound") return {check_cor3(f, opt)};
  if (id == "laplace-transport-bound") return check_cor4(f, need(in.c, "--c", id), opt);
  if (id == "parts") {
    // f's pdf against the weight on the support of f
    const auto g = weight_of(in, &f);
    MapFn fm{[f](double x) { return f.pdf(x); }, [f](double x) { return f.derivative(x); }, f.descriptor()};
    MapFn gm{[g](double x) { return g(x); }, [g](double x) { return g.derivative(x); }, g.descriptor()};
    const auto r = lemma4_residual(fm, gm, f.support(), joint_hints(f, g));
    auto v = residual_verdict(id, r.int_f_dg, -r.int_df_g, r.residual, in.tol.value_or(1e-7),
                              {{"int_f_dg", r.int_f_dg}, {"int_df_g", r.int_df_g}, {"boundary", r.boundary}});
    v.margins.push_back({"boundary-vanishes", r.boundary_ok ? 1.0 : -r.boundary, true});
    if (!r.boundary_ok) v.verdict = Verdict::assumptions_unmet;
    return {v};
  }
  throw InputError("unknown check '" + id + "'");
}

int exit_code(const std::exception& e) {
  if (dynamic_cast<const InputError*>(&e)) return kInputError;
  if (dynamic_cast<const DomainError*>(&e) || dynamic_cast<const EvaluationError*>(&e)) return kDomainError;
  return kDomainError;
}

Json error_json(const std::exception& e) {
  Json j;
  Json err;
  err["kind"] = exit_code(e) == kInputError ? "input" : "domain";
  err["message"] = e.what();
  j["error"] = err;
  return j;
}

Outcome cmd_compute(std::string_view measure_id, const Inputs& in, bool with_oracle) {
  Outcome out;
  try {
    const auto m = canonical_measure(measure_id);
    Json j;
    j["command"] = "compute";
    j["measure"] = m;
    j["inputs"] = to_json(in);
    if (m == "gauss") {
      j["result"] = to_json(gaussian_measures(weight_of(in, nullptr), need(in.alpha, "--alpha", m), need(in.p, "--p", m)));
    } else {
      j["result"] = to_json(evaluate_measure(m, in));
    }
    if (with_oracle) {
      static const std::map<std::string, std::string> names = {
          {"expectation", "expectation"}, {"power-integral", "power-integral"}, {"we", "we"}, {"wre", "wre"},
          {"wrp", "wrp"}, {"moment", "moment"}, {"dev", "deviation"}, {"fisher", "fisher"}, {"wfi", "wfi"}};
      const auto it = names.find(m);
      if (it == names.end()) throw InputError("no oracle path for " + m);
      const Density f = parse_density(in.f);
      oracle::OracleConfig cfg;
      cfg.seed = in.seed;
      j["oracle"] = to_json(oracle::cross_validate(
          {it->second, f, weight_of(in, &f), in.p.value_or(2.0), in.alpha.value_or(2.0)}, cfg));
    }
    out.report = std::move(j);
  } catch (const std::exception& e) {
    out.report = error_json(e);
    out.exit_code = exit_code(e);
  }
  return out;
}

Outcome cmd_verify(std::string_view check_id, const Inputs& in) {
  Outcome out;
  try {
    const auto id = canonical_check(check_id);
    Json j;
    j["command"] = "verify";
    j["check"] = id;
    j["inputs"] = to_json(in);
    j["verdicts"] = Json::array();
    for (const auto& v : evaluate_check(id, in)) j["verdicts"].push_back(to_json(v));
    out.report = std::move(j);
  } catch (const std::exception& e) {
    out.report = error_json(e);
    out.exit_code = exit_code(e);
  }
  return out;
}

}  // namespace wrenyi::app
