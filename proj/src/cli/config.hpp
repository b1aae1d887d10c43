#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "comb/thermo.hpp"

namespace comb::cli {

// Flat key = value run configuration. All physics parameters are explicit;
// only the numeric controls carry defaults. Unknown keys are rejected.
struct RunConfig {
  std::string potential;  // delta_prime | poschl_teller | free
  std::optional<double> w0, w1, epsilon;
  std::optional<double> spacing;

  std::string method = "rotated";  // rotated | real_axis | matsubara | all
  double alpha = 0.78539816339744831;
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
  double mass = 0.0;

  std::optional<double> T;
  std::optional<double> T_min, T_max, T_step;

  std::optional<double> omega_min, omega_max;
  std::optional<int> omega_steps;
  std::optional<double> omega_cut;
  int max_bands = 10000;

  // sweep grid over the reduced delta-delta' couplings
  std::optional<double> Omega_min, Omega_max, gamma_min, gamma_max;
  std::optional<int> Omega_steps, gamma_steps;
  std::string quantity = "free_energy";  // free_energy | entropy
  std::optional<double> sweep_T;

  std::optional<int> workers;
};

RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// Model construction with invariant validation (throws ConfigError).
ModelPtr make_model(const RunConfig& cfg);
CombSpec make_comb(const RunConfig& cfg);
std::vector<double> temperature_grid(const RunConfig& cfg);
Tolerances tolerances(const RunConfig& cfg);

}  // namespace comb::cli
