#include "cli/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "comb/errors.hpp"

namespace comb::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has a malformed number: '" + v + "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    const int x = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has a malformed integer: '" + v + "'");
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg;
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));
    if (key.empty() || val.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    if (kv.count(key))
      throw ConfigError("config: duplicate key '" + key + "'");
    kv[key] = val;
  }

  const std::set<std::string> known = {
      "potential", "w0", "w1", "epsilon", "a", "method", "alpha", "rel_tol", "abs_tol",
      "mass", "T", "T_min", "T_max", "T_step", "omega_min", "omega_max", "omega_steps",
      "omega_cut", "max_bands", "Omega_min", "Omega_max", "Omega_steps", "gamma_min",
      "gamma_max", "gamma_steps", "quantity", "sweep_T", "workers"};
  for (const auto& [k, v] : kv) {
    if (!known.count(k)) throw ConfigError("config: unknown key '" + k + "'");
  }

  auto get = [&](const char* k) -> std::optional<std::string> {
    auto it = kv.find(k);
    if (it == kv.end()) return std::nullopt;
    return it->second;
  };

  if (auto v = get("potential")) cfg.potential = *v;
  if (auto v = get("w0")) cfg.w0 = to_double("w0", *v);
  if (auto v = get("w1")) cfg.w1 = to_double("w1", *v);
  if (auto v = get("epsilon")) cfg.epsilon = to_double("epsilon", *v);
  if (auto v = get("a")) cfg.spacing = to_double("a", *v);
  if (auto v = get("method")) cfg.method = *v;
  if (auto v = get("alpha")) cfg.alpha = to_double("alpha", *v);
  if (auto v = get("rel_tol")) cfg.rel_tol = to_double("rel_tol", *v);
  if (auto v = get("abs_tol")) cfg.abs_tol = to_double("abs_tol", *v);
  if (auto v = get("mass")) cfg.mass = to_double("mass", *v);
  if (auto v = get("T")) cfg.T = to_double("T", *v);
  if (auto v = get("T_min")) cfg.T_min = to_double("T_min", *v);
  if (auto v = get("T_max")) cfg.T_max = to_double("T_max", *v);
  if (auto v = get("T_step")) cfg.T_step = to_double("T_step", *v);
  if (auto v = get("omega_min")) cfg.omega_min = to_double("omega_min", *v);
  if (auto v = get("omega_max")) cfg.omega_max = to_double("omega_max", *v);
  if (auto v = get("omega_steps")) cfg.omega_steps = to_int("omega_steps", *v);
  if (auto v = get("omega_cut")) cfg.omega_cut = to_double("omega_cut", *v);
  if (auto v = get("max_bands")) cfg.max_bands = to_int("max_bands", *v);
  if (auto v = get("Omega_min")) cfg.Omega_min = to_double("Omega_min", *v);
  if (auto v = get("Omega_max")) cfg.Omega_max = to_double("Omega_max", *v);
  if (auto v = get("Omega_steps")) cfg.Omega_steps = to_int("Omega_steps", *v);
  if (auto v = get("gamma_min")) cfg.gamma_min = to_double("gamma_min", *v);
  if (auto v = get("gamma_max")) cfg.gamma_max = to_double("gamma_max", *v);
  if (auto v = get("gamma_steps")) cfg.gamma_steps = to_int("gamma_steps", *v);
  if (auto v = get("quantity")) cfg.quantity = *v;
  if (auto v = get("sweep_T")) cfg.sweep_T = to_double("sweep_T", *v);
  if (auto v = get("workers")) cfg.workers = to_int("workers", *v);

  if (cfg.method != "rotated" && cfg.method != "real_axis" && cfg.method != "matsubara"
      && cfg.method != "all")
    throw ConfigError("config: method must be rotated, real_axis, matsubara or all");
  if (cfg.quantity != "free_energy" && cfg.quantity != "entropy")
    throw ConfigError("config: quantity must be free_energy or entropy");
  if (cfg.rel_tol < 1e-12) throw ConfigError("config: rel_tol below the 1e-12 floor");
  if (cfg.abs_tol <= 0) throw ConfigError("config: abs_tol must be positive");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

ModelPtr make_model(const RunConfig& cfg) {
  if (cfg.potential == "free") {
    return std::make_shared<DeltaPrimeDefect>(0.0, 0.0);
  }
  if (cfg.potential == "delta_prime") {
    if (!cfg.w0 || !cfg.w1)
      throw ConfigError("config: delta_prime requires explicit w0 and w1");
    if (*cfg.w0 < 0) throw ConfigError("config: w0 must be >= 0");
    return std::make_shared<DeltaPrimeDefect>(*cfg.w0, *cfg.w1);
  }
  if (cfg.potential == "poschl_teller") {
    if (!cfg.epsilon) throw ConfigError("config: poschl_teller requires explicit epsilon");
    if (*cfg.epsilon <= 0) throw ConfigError("config: epsilon must be positive");
    if (cfg.spacing && *cfg.epsilon > *cfg.spacing)
      throw ConfigError("config: epsilon must not exceed the lattice spacing a");
    return std::make_shared<PoschlTellerDefect>(*cfg.epsilon);
  }
  throw ConfigError("config: potential must be delta_prime, poschl_teller or free");
}

CombSpec make_comb(const RunConfig& cfg) {
  if (!cfg.spacing) throw ConfigError("config: lattice spacing 'a' is required");
  if (*cfg.spacing <= 0) throw ConfigError("config: lattice spacing must be positive");
  try {
    return CombSpec(make_model(cfg), *cfg.spacing);
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

std::vector<double> temperature_grid(const RunConfig& cfg) {
  std::vector<double> out;
  if (cfg.T) {
    out.push_back(*cfg.T);
  } else if (cfg.T_min && cfg.T_max && cfg.T_step) {
    if (*cfg.T_step <= 0) throw ConfigError("config: T_step must be positive");
    for (double t = *cfg.T_min; t <= *cfg.T_max + 1e-12 * *cfg.T_step; t += *cfg.T_step)
      out.push_back(t);
  } else {
    throw ConfigError("config: provide T or the triple T_min/T_max/T_step");
  }
  for (double t : out)
    if (t <= 0) throw ConfigError("config: temperatures must be positive");
  return out;
}

Tolerances tolerances(const RunConfig& cfg) {
  Tolerances tol;
  tol.rel_tol = cfg.rel_tol;
  tol.abs_tol = cfg.abs_tol;
  return tol;
}

}  // namespace comb::cli
