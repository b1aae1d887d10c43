#pragma once

#include <ostream>
#include <string>

#include "cli/config.hpp"

namespace comb::cli {

struct CommandOptions {
  std::string format = "csv";  // csv | json
  bool check_fd = false;
  int workers = 0;  // 0 = COMB_THERMO_WORKERS env or hardware default
};

// Each command writes its table to `out` and returns 0 on success. Errors
// surface as exceptions: ConfigError -> exit 2, any other comb::Error -> 3.
int cmd_bands(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt);
int cmd_dos(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt);
int cmd_free_energy(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt);
int cmd_entropy(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt);
int cmd_sweep(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt);
int cmd_single(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt);
// Invariant battery; returns 0 iff every check passes (3 otherwise).
int cmd_validate(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt);

}  // namespace comb::cli
