#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "markovsig/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Design measure-independent multi-frequency input signals and bound the responses."};
  app.require_subcommand(1);

  markovsig::CommandOptions opts;
  std::uint64_t seed = 0;
  int grid_size = 0;
  std::string chosen;

  for (const char* name : {"design", "verify", "simulate", "bounds", "region"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--scenario", opts.scenario_path, "Scenario JSON file")->required();
    sub->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    sub->add_option("--seed", seed, "Seed override");
    sub->add_option("--grid-size", grid_size, "Number of time samples (overrides time.steps)");
    sub->callback([&chosen, name] { chosen = name; });
  }
  app.get_subcommand("design")->description("Compute residues and the certified error");
  app.get_subcommand("verify")->description("Check the certificate on measures and matrices");
  app.get_subcommand("simulate")->description("Write input and response time series");
  app.get_subcommand("bounds")->description("Write moment-constrained response bounds");
  app.get_subcommand("region")->description("Report Joukowski geometry and H(r) membership");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return markovsig::kExitValidation;
  }

  CLI::App* sub = app.get_subcommand(chosen);
  if (sub->count("--seed") > 0) opts.seed = seed;
  if (sub->count("--grid-size") > 0) opts.grid_size = grid_size;
  return markovsig::run_command(chosen, opts, std::cout, std::cerr);
}
