// Command-line front end: tippe simulate|sweep|potential --config FILE --out DIR

#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "tippe/commands.hpp"
#include "tippe/config.hpp"

int main(int argc, char** argv)
{
  CLI::App app{"Tippe top inversion simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  long long seed = 0;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "configuration file")->required();
    cmd->add_option("--out", out_dir, "output directory");
    cmd->add_option("--seed", seed, "reserved; runs are deterministic");
  };
  CLI::App* simulate = app.add_subcommand("simulate", "integrate one run and write diagnostics");
  CLI::App* sweep = app.add_subcommand("sweep", "run a batch over one initial-condition axis");
  CLI::App* potential = app.add_subcommand("potential", "tabulate the effective potential");
  add_common(simulate);
  add_common(sweep);
  add_common(potential);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError& e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : tippe::exit_code::config;
  }

  tippe::RunConfig cfg;
  try
  {
    cfg = tippe::load_config(config_path);
  }
  catch (const tippe::ConfigError& e)
  {
    std::cerr << "config error: " << e.what() << '\n';
    return tippe::exit_code::config;
  }

  try
  {
    if (simulate->parsed())
    {
      return tippe::cmd_simulate(cfg, out_dir, std::cerr);
    }
    if (sweep->parsed())
    {
      return tippe::cmd_sweep(cfg, out_dir, std::cerr);
    }
    return tippe::cmd_potential(cfg, out_dir, std::cerr);
  }
  catch (const std::exception& e)
  {
    std::cerr << "error: " << e.what() << '\n';
    return tippe::exit_code::numerical;
  }
}
