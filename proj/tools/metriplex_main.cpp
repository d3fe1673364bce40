// metriplex command line: verify a configured system, simulate it, or run a
// canned demo.

#include <CLI11.hpp>

#include "metriplex/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"metriplectic 4-bracket toolkit"};
  app.require_subcommand(1);

  metriplex::CliOptions opt;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool seed_set = false;

  app.add_option("--out", out_dir, "output directory (overrides METRIPLEX_OUT and config)");
  app.add_option("--seed", seed, "verification sample seed")->each([&](const std::string&) {
    seed_set = true;
  });
  app.add_option("--jobs", opt.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);

  std::string verify_cfg, simulate_cfg, demo_name;
  auto* verify = app.add_subcommand("verify", "run the verification suites on a config");
  verify->add_option("config", verify_cfg, "JSON run configuration")->required();
  auto* simulate = app.add_subcommand("simulate", "integrate a configured system");
  simulate->add_option("config", simulate_cfg, "JSON run configuration")->required();
  auto* demo = app.add_subcommand("demo", "run a canned example");
  demo->add_option("name", demo_name, "rigid_body|kida|viscous1d|kdv|ott_sudan|euler2d")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (!out_dir.empty()) opt.out_dir = out_dir;
  if (seed_set) opt.seed = seed;

  if (verify->parsed()) return metriplex::cmd_verify(verify_cfg, opt);
  if (simulate->parsed()) return metriplex::cmd_simulate(simulate_cfg, opt);
  return metriplex::cmd_demo(demo_name, opt);
}
