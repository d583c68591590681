#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "errors.hpp"
#include "mwg/mwg.h"

int main(int argc, char** argv) {
  using namespace mwgcli;
  RunOptions opts;
  if (const char* env = std::getenv("MWG_OUT_DIR"); env && *env) opts.out_dir = env;
  else opts.out_dir = "mwg-out";

  CLI::App app{"Matter-wave diffraction at absorptive standing-wave gratings", "mwg"};
  app.set_version_flag("--version", std::string("mwg ") + mwg_version());
  app.add_option("command", opts.command, "derive-params | talbot | kdtli | farfield | ladder | rabi | figure")
      ->required()
      ->check(CLI::IsMember(command_names()));
  app.add_option("figure", opts.figure, "figure number for the figure command: 1 | 2 | 4 | 5 | 6");
  app.add_option("--config", opts.config_path, "INI configuration file");
  app.add_option("--out", opts.out_dir, "output directory (default $MWG_OUT_DIR or ./mwg-out)");
  app.add_option("--sweep", opts.sweeps, "section.key=start:stop:count, repeatable")->take_all();
  app.add_option("--format", opts.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", opts.jobs, "worker threads, 0 = all cores")->check(CLI::NonNegativeNumber);
  app.add_option("--variant", opts.variant, "quantum | classical")->check(CLI::IsMember({"quantum", "classical"}));
  app.add_option("--ell", opts.ell, "absorption number N, all, or sum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_ok : exit_config;
  }
  if (opts.command == "figure" && opts.figure.empty()) {
    std::cerr << "mwg: figure needs a figure number (1, 2, 4, 5 or 6)\n";
    return exit_config;
  }
  if (opts.command != "figure" && !opts.figure.empty()) {
    std::cerr << "mwg: unexpected argument '" << opts.figure << "'\n";
    return exit_config;
  }
  return run(opts);
}
