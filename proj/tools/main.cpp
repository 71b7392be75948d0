#include <functional>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli.hpp"
#include "gaugewalk/error.hpp"

using namespace gaugewalk;

namespace {

void add_common(CLI::App* sub, cli::Options& opt, bool multi_input) {
  if (multi_input)
    sub->add_option("--input", opt.inputs, "input .gw or .json file (repeatable)");
  else
    sub->add_option("--input", opt.inputs, "input .gw or .json file")->expected(1);
  sub->add_option("--out", opt.out, "output directory (default: $GAUGEWALK_OUT, then the input file, then .)");
  sub->add_flag("--json", opt.json, "machine-readable stdout and diagnostics");
  sub->add_option("--tol", opt.tol, "comparison tolerance")->check(CLI::PositiveNumber);
  sub->add_option("--threads", opt.threads, "worker threads (0 = hardware)");
  sub->add_option("--seed", opt.seed, "seed for randomized demos");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gaugewalk: lattice gauge fields and coupled quantum walks"};
  app.set_version_flag("--version", GAUGEWALK_VERSION);
  app.require_subcommand(1);

  cli::Options opt;
  const std::map<std::string, std::pair<std::string, std::function<int(const cli::Options&)>>> commands = {
      {"check-field", {"report whether a field form is closed", cli::check_field}},
      {"solve-potential", {"write a tree-gauge potential for a closed 2-form", cli::solve_potential}},
      {"gauge-check", {"decide gauge equivalence of two translation systems", cli::gauge_check}},
      {"couple", {"export the coupled one-step matrix", cli::couple}},
      {"evolve", {"evolve the localized initial state", cli::evolve}},
      {"spectrum", {"quasi-energy bands at rational flux", cli::spectrum}},
      {"butterfly", {"quasi-energy histogram over all fluxes", cli::butterfly}},
      {"delta-gamma-demo", {"discretization/continuization round trip", cli::delta_gamma_demo}},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    add_common(sub, opt, name == "gauge-check");
    if (name == "couple") {
      sub->add_option("--format", opt.format, "json or bin");
      sub->add_option("--time", opt.time, "time step of the exported operator");
    }
    subs[name] = sub;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [name, sub] : subs) {
    if (!sub->parsed()) continue;
    try {
      return commands.at(name).second(opt);
    } catch (const cli::UsageError& e) {
      std::cerr << "usage error: " << e.what() << '\n';
      return 2;
    } catch (const cli::Reported&) {
      return 1;
    } catch (const gaugewalk::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 1;
    }
  }
  return 2;
}
