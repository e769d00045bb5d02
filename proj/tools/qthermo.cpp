#include <iostream>

#include <CLI11.hpp>

#include "qthermo/cli/commands.hpp"

int main(int argc, char** argv) {
  using qthermo::cli::Invocation;
  using qthermo::cli::Mode;

  CLI::App app{"Strong-coupling quench thermodynamics: runs, sweeps, audits, comparisons"};
  app.require_subcommand(1);

  Invocation call;
  std::uint64_t seed = 0;
  std::string out;

  const std::pair<const char*, Mode> commands[] = {
      {"run", Mode::Run}, {"sweep", Mode::Sweep}, {"audit", Mode::Audit}, {"compare", Mode::Compare}};
  const char* help[] = {"Run one quench and print its ledger",
                        "Sweep a two-spin parameter and write CSV plus summary",
                        "Check invariants on seeded random Hamiltonians",
                        "Compare engine and closed-form ledgers on a grid"};
  std::vector<CLI::App*> subcommands;
  for (std::size_t i = 0; i < 4; ++i) {
    auto* sub = app.add_subcommand(commands[i].first, help[i]);
    sub->add_option("--config", call.config_path, "JSON config file")->required();
    sub->add_option("--seed", seed, "Seed for random draws");
    sub->add_option("--out", out, "Output path");
    sub->add_option("--tol", call.tolerance_overrides, "Tolerance override name=value (repeatable)");
    subcommands.push_back(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : qthermo::cli::kExitConfig;
  }

  for (std::size_t i = 0; i < 4; ++i) {
    auto* sub = subcommands[i];
    if (!sub->parsed()) continue;
    call.mode = commands[i].second;
    if (sub->count("--seed")) call.seed = seed;
    if (sub->count("--out")) call.out = out;
  }
  return qthermo::cli::execute(call, std::cout, std::cerr);
}
