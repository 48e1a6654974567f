#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "criteria.hpp"
#include "scenario.hpp"
#include "wrenyi/descriptors.hpp"

namespace {

using namespace wrenyi::app;

void add_order_flags(CLI::App* cmd, Inputs& in) {
  cmd->add_option("--f", in.f, "density descriptor");
  cmd->add_option("--g", in.g, "second density descriptor");
  cmd->add_option("--w", in.w, "weight descriptor (default const:1)");
  // values such as "inf" are parsed by the library, not CLI11
  auto real_opt = [cmd](const char* name, std::optional<double>& dst, const char* help) {
    cmd->add_option_function<std::string>(
        name, [&dst, name](const std::string& s) { dst = wrenyi::parse_real(s, name); }, help);
  };
  real_opt("--p", in.p, "order p");
  real_opt("--alpha", in.alpha, "order alpha (inf allowed)");
  real_opt("--c", in.c, "parameter c");
  real_opt("--t", in.t, "scale t (scaling check)");
  real_opt("--tol", in.tol, "verdict tolerance");
  cmd->add_option("--seed", in.seed, "random seed");
}

int finish(const Outcome& o) {
  std::cout << dump(o.report) << '\n';
  return o.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Renyi entropies, moments and Fisher information"};
  app.require_subcommand(1);

  Inputs in;
  std::string measure, check, scenario, out_prefix, repro_id;
  bool with_oracle = false;
  int jobs = 1;
  std::uint64_t seed = 42;

  auto* compute = app.add_subcommand("compute", "evaluate one measure");
  compute->add_option("measure", measure, "measure name")->required();
  add_order_flags(compute, in);
  compute->add_flag("--oracle", with_oracle, "also evaluate with the brute-force oracle");

  auto* verify = app.add_subcommand("verify", "check an inequality or identity");
  verify->add_option("check", check, "check name")->required();
  add_order_flags(verify, in);

  auto* sweep = app.add_subcommand("sweep", "run a scenario grid");
  sweep->add_option("scenario", scenario, "scenario JSON file")->required();
  sweep->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_prefix, "output prefix for .csv and .json");

  auto* repro = app.add_subcommand("repro", "run a bundled reproduction");
  repro->add_option("id", repro_id, "bundle id")->required();
  repro->add_option("--seed", seed, "random seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  } catch (const std::exception& e) {
    // a bad real inside an option callback
    std::cout << dump(error_json(e)) << '\n';
    return exit_code(e);
  }

  if (*compute) return finish(cmd_compute(measure, in, with_oracle));
  if (*verify) return finish(cmd_verify(check, in));
  if (*sweep) return finish(cmd_sweep(scenario, jobs, out_prefix));
  return finish(cmd_repro(repro_id, seed));
}
