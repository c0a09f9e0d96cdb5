#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"

using namespace maxsie::cli;

int main(int argc, char **argv)
{
  CLI::App app{"Surface integral solver for dielectric scattering"};
  app.require_subcommand(1);

  std::string config_path, xi_text;
  double omega = 0.0;
  int order = 0;

  auto add_common = [&](CLI::App *sub, bool config_required) {
    auto *opt = sub->add_option("config", config_path, "JSON run configuration");
    if (config_required)
    {
      opt->required();
    }
    sub->add_option("--xi", xi_text, "stabilization parameter, re or re,im");
    sub->add_option("--omega", omega, "angular frequency");
    sub->add_option("--order", order, "polar grid order (azimuthal order is twice this)");
  };
  CLI::App *solve = app.add_subcommand("solve", "solve for the surface traces of a plane-wave excitation");
  CLI::App *sweep = app.add_subcommand("sweep", "condition and constraint diagnostics over a frequency list");
  CLI::App *singular = app.add_subcommand("singular-find", "locate singular sphere parameters");
  CLI::App *pencil = app.add_subcommand("pencil", "finite-dimensional pencil experiments");
  add_common(solve, true);
  add_common(sweep, true);
  add_common(singular, false);
  add_common(pencil, false);

  try
  {
    app.parse(argc, argv);
  }
  catch (const CLI::ParseError &e)
  {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInputError;
  }

  return RunGuarded(
      [&]() {
        RunConfig config = config_path.empty() ? ParseConfig(nlohmann::json::object()) : LoadConfig(config_path);
        Overrides o;
        if (!xi_text.empty()) o.xi = ParseComplexFlag(xi_text);
        if (omega != 0.0) o.omega = omega;
        if (order != 0) o.order = order;
        ApplyOverrides(config, o);
        if (solve->parsed()) return CmdSolve(config, std::cout, std::cerr);
        if (sweep->parsed()) return CmdSweep(config, std::cout, std::cerr);
        if (singular->parsed()) return CmdSingularFind(config, std::cout, std::cerr);
        return CmdPencil(config, std::cout, std::cerr);
      },
      std::cerr);
}
