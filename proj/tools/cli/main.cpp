#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Verification runner for crossed-product metric geometry"};
  app.require_subcommand(1);

  crossmetric::runner::RunOptions options;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t max_ball = 0;

  auto* run = app.add_subcommand("run", "Run the checks listed in a scenario file");
  run->add_option("config", options.config, "Scenario file (.toml or .json)")
      ->required()
      ->check(CLI::ExistingFile);
  auto* out_opt = run->add_option("--out", out, "Output directory");
  auto* seed_opt = run->add_option("--seed", seed, "Override the scenario seed");
  auto* ball_opt = run->add_option("--max-ball", max_ball, "Cap on enumerated ball size")
                       ->check(CLI::PositiveNumber);
  run->add_option("--jobs", options.jobs, "Checks run in parallel")->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list-checks", "Print every check with the inequality it verifies");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list->parsed()) {
    crossmetric::runner::list_checks(std::cout);
    return 0;
  }
  if (*out_opt) options.out = out;
  if (*seed_opt) options.seed = seed;
  if (*ball_opt) options.max_ball = max_ball;
  return crossmetric::runner::run(options, std::cout, std::cerr);
}
