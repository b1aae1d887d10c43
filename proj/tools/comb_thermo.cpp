// comb-thermo: band spectra, free energy and entropy of periodic
// one-dimensional scattering backgrounds.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "comb/errors.hpp"

namespace {

int run(const std::string& command, const std::string& config_path,
        const std::string& out_path, const comb::cli::CommandOptions& opt) {
  const comb::cli::RunConfig cfg = comb::cli::parse_config_file(config_path);

  std::ofstream file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) throw comb::ConfigError("cannot open output file '" + out_path + "'");
    out = &file;
  }

  using Handler = int (*)(const comb::cli::RunConfig&, std::ostream&,
                          const comb::cli::CommandOptions&);
  Handler handler = nullptr;
  if (command == "bands") handler = comb::cli::cmd_bands;
  else if (command == "dos") handler = comb::cli::cmd_dos;
  else if (command == "free-energy") handler = comb::cli::cmd_free_energy;
  else if (command == "entropy") handler = comb::cli::cmd_entropy;
  else if (command == "sweep") handler = comb::cli::cmd_sweep;
  else if (command == "single") handler = comb::cli::cmd_single;
  else if (command == "validate") handler = comb::cli::cmd_validate;
  else throw comb::ConfigError("unknown command '" + command + "'");
  return handler(cfg, *out, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"comb-thermo: thermal spectra of periodic scattering backgrounds"};
  app.require_subcommand(1);

  std::string config_path, out_path;
  comb::cli::CommandOptions opt;

  for (const char* name : {"bands", "dos", "free-energy", "entropy", "sweep", "single",
                           "validate"}) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--format", opt.format, "csv or json");
    sub->add_option("--workers", opt.workers, "worker threads for sweeps");
    if (std::string(name) == "entropy")
      sub->add_flag("--check-fd", opt.check_fd, "add a finite-difference cross-check column");
  }

  CLI11_PARSE(app, argc, argv);

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, config_path, out_path, opt);
  } catch (const comb::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const comb::Error& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return 3;
  }
}
