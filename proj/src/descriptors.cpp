#include "wrenyi/descriptors.hpp"

#include <charconv>
#include <cmath>
#include <limits>

#include "wrenyi/errors.hpp"
#include "wrenyi/weighted_density.hpp"

namespace wrenyi {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Splits "head:rest" at the first colon; no colon gives an empty rest.
std::pair<std::string_view, std::string_view> split_kind(std::string_view s) {
  const auto c = s.find(':');
  if (c == std::string_view::npos) return {s, {}};
  return {s.substr(0, c), s.substr(c + 1)};
}

std::vector<double> args_exact(std::string_view kind, std::string_view rest, size_t lo, size_t hi) {
  auto v = rest.empty() ? std::vector<double>{} : parse_real_list(rest, kind);
  if (v.size() < lo || v.size() > hi) {
    std::string want = lo == hi ? std::to_string(lo) : std::to_string(lo) + " to " + std::to_string(hi);
    throw InputError(std::string(kind) + ": expected " + want + " parameter(s), got " + std::to_string(v.size()));
  }
  return v;
}

}  // namespace

double parse_real(std::string_view text, std::string_view what) {
  const auto s = trim(text);
  if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  const char* b = s.data();
  const char* e = s.data() + s.size();
  if (b != e && *b == '+') ++b;
  auto [ptr, ec] = std::from_chars(b, e, v);
  if (s.empty() || ec != std::errc() || ptr != e || std::isnan(v))
    throw InputError(std::string(what) + ": not a number: '" + std::string(text) + "'");
  return v;
}

std::vector<double> parse_real_list(std::string_view text, std::string_view what) {
  std::vector<double> out;
  size_t start = 0;
  while (true) {
    const auto c = text.find(',', start);
    out.push_back(parse_real(text.substr(start, c == std::string_view::npos ? c : c - start), what));
    if (c == std::string_view::npos) break;
    start = c + 1;
  }
  return out;
}

Density parse_density(std::string_view text) {
  const auto s = trim(text);
  const auto [kind, rest] = split_kind(s);
  if (kind == "exp") return make_exponential(args_exact(kind, rest, 1, 1)[0]);
  if (kind == "laplace") return make_laplace(args_exact(kind, rest, 1, 1)[0]);
  if (kind == "tent") {
    args_exact(kind, rest, 0, 0);
    return make_tent();
  }
  if (kind == "uniform") {
    args_exact(kind, rest, 0, 0);
    return make_uniform();
  }
  if (kind == "gg") {
    const auto a = args_exact(kind, rest, 2, 3);
    return make_generalized_gaussian(a[0], a[1], a.size() == 3 ? a[2] : 1.0);
  }
  if (kind == "scaled" || kind == "cosmod") {
    const auto semi = rest.find(';');
    if (semi == std::string_view::npos) throw InputError(std::string(kind) + ": expected '<params>;<density>'");
    const auto base = parse_density(rest.substr(semi + 1));
    if (kind == "scaled") return scale_density(base, args_exact(kind, rest.substr(0, semi), 1, 1)[0]);
    const auto a = args_exact(kind, rest.substr(0, semi), 2, 2);
    return make_cosine_perturbation(base, a[0], a[1]);
  }
  if (kind == "weighted") {
    // weights never contain ';', so the last one separates
    const auto semi = rest.rfind(';');
    if (semi == std::string_view::npos) throw InputError("weighted: expected '<density>;<weight>'");
    const auto base = parse_density(rest.substr(0, semi));
    return make_weighted_density(base, parse_weight(rest.substr(semi + 1), &base));
  }
  if (kind == "table") {
    if (rest.empty()) throw InputError("table: missing path");
    return load_table(std::string(rest));
  }
  throw InputError("unknown density descriptor '" + std::string(s) + "'");
}

WeightFunction parse_weight(std::string_view text, const Density* f) {
  const auto s = trim(text);
  const auto [kind, rest] = split_kind(s);
  if (kind == "const") return make_constant_weight(args_exact(kind, rest, 0, 1).empty() ? 1.0 : parse_real(rest, kind));
  if (kind == "expw") return make_exp_weight(args_exact(kind, rest, 1, 1)[0]);
  if (kind == "pow") return make_power_weight(args_exact(kind, rest, 1, 1)[0]);
  if (kind == "abspoly") return make_abs_polynomial_weight(args_exact(kind, rest, 1, 64));
  if (kind == "fpoly" || kind == "fpow") {
    if (!f) throw InputError(std::string(kind) + ": needs a density to build on");
    if (kind == "fpoly") return make_density_polynomial_weight(*f, args_exact(kind, rest, 1, 64));
    const auto a = args_exact(kind, rest, 2, 2);
    return make_density_power_weight(*f, a[0], a[1]);
  }
  throw InputError("unknown weight descriptor '" + std::string(s) + "'");
}

}  // namespace wrenyi
