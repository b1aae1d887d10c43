#include "cli/commands.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "cli/table.hpp"
#include "comb/errors.hpp"
#include "comb/oracle.hpp"

namespace comb::cli {

namespace {
constexpr double kPi = 3.14159265358979323846;

void emit(const Table& t, std::ostream& out, const CommandOptions& opt) {
  if (opt.format == "json") t.write_json(out);
  else if (opt.format == "csv") t.write_csv(out);
  else throw ConfigError("format must be csv or json");
}

int resolve_workers(const CommandOptions& opt, const RunConfig& cfg) {
  if (opt.workers > 0) return opt.workers;
  if (cfg.workers && *cfg.workers > 0) return *cfg.workers;
  if (const char* env = std::getenv("COMB_THERMO_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 2;
}

ThermoRequest base_request(const RunConfig& cfg, const CombSpec& comb, double T) {
  ThermoRequest req{comb};
  req.temperature = T;
  req.alpha = cfg.alpha;
  req.tol = tolerances(cfg);
  req.mass = cfg.mass;
  if (cfg.omega_cut) req.cutoff = *cfg.omega_cut;
  return req;
}

// Completed Matsubara route to Delta_T F: F_sub - E0_sub - C(T). The
// background thermal term C(T) comes from the diagnostics, so all three
// pieces are imaginary-axis data.
double delta_f_via_matsubara(const RunConfig& cfg, const CombSpec& comb, double T,
                             double e0_sub) {
  ThermoRequest req = base_request(cfg, comb, T);
  req.method = Method::Matsubara;
  req.cutoff = 0.0;
  const ThermoResult f = free_energy_matsubara(req);
  return f.value - e0_sub - f.diag.background_thermal_term;
}

}  // namespace

int cmd_bands(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt) {
  const CombSpec comb = make_comb(cfg);
  if (!cfg.omega_cut) throw ConfigError("bands: omega_cut is required");
  Table t({"n", "omega_min", "omega_max"});
  for (const Band& b : band_edges(comb, *cfg.omega_cut, cfg.max_bands))
    t.add_row({static_cast<long>(b.index), b.omega_min, b.omega_max});
  emit(t, out, opt);
  return 0;
}

int cmd_dos(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt) {
  const CombSpec comb = make_comb(cfg);
  if (!cfg.omega_min || !cfg.omega_max || !cfg.omega_steps)
    throw ConfigError("dos: omega_min, omega_max and omega_steps are required");
  if (*cfg.omega_steps < 1 || *cfg.omega_max <= *cfg.omega_min)
    throw ConfigError("dos: need omega_max > omega_min and omega_steps >= 1");
  Table t({"omega", "dos"});
  const int n = *cfg.omega_steps;
  for (int i = 0; i < n; ++i) {
    const double w = *cfg.omega_min
        + (n > 1 ? (*cfg.omega_max - *cfg.omega_min) * i / (n - 1) : 0.0);
    double d;
    try {
      d = density_of_states(comb, w);
    } catch (const EdgeSingularity&) {
      d = std::nan("");  // explicit marker, never silently skipped
    }
    t.add_row({w, d});
  }
  emit(t, out, opt);
  return 0;
}

int cmd_free_energy(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt) {
  const CombSpec comb = make_comb(cfg);
  const std::vector<double> Ts = temperature_grid(cfg);
  if (cfg.mass > 0.0 && cfg.method != "rotated")
    throw ConfigError("free-energy: mass > 0 is supported by method = rotated only");

  if (cfg.method == "all") {
    Table t({"T", "real_axis", "rotated", "matsubara"});
    const double e0 = vacuum_energy(comb, tolerances(cfg)).value;
    for (double T : Ts) {
      ThermoRequest req = base_request(cfg, comb, T);
      req.method = Method::RealAxis;
      const double ra = delta_f_real_axis(req).value;
      req.method = Method::Rotated;
      const double ro = delta_f_rotated(req).value;
      t.add_row({T, ra, ro, delta_f_via_matsubara(cfg, comb, T, e0)});
    }
    emit(t, out, opt);
    return 0;
  }

  Table t({"T", "delta_f", "err", "method"});
  double e0 = 0.0;
  if (cfg.method == "matsubara") e0 = vacuum_energy(comb, tolerances(cfg)).value;
  for (double T : Ts) {
    ThermoRequest req = base_request(cfg, comb, T);
    if (cfg.method == "real_axis") {
      req.method = Method::RealAxis;
      const ThermoResult r = delta_f_real_axis(req);
      t.add_row({T, r.value, r.err_estimate, std::string("real_axis")});
    } else if (cfg.method == "matsubara") {
      t.add_row({T, delta_f_via_matsubara(cfg, comb, T, e0), 0.0, std::string("matsubara")});
    } else {
      req.method = Method::Rotated;
      const ThermoResult r = (cfg.mass > 0.0) ? delta_f_massive(req) : delta_f_rotated(req);
      t.add_row({T, r.value, r.err_estimate, std::string("rotated")});
    }
  }
  emit(t, out, opt);
  return 0;
}

int cmd_entropy(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt) {
  const CombSpec comb = make_comb(cfg);
  const std::vector<double> Ts = temperature_grid(cfg);
  std::vector<std::string> cols = {"T", "entropy", "err"};
  if (opt.check_fd) cols.push_back("entropy_fd");
  Table t(cols);
  for (double T : Ts) {
    ThermoRequest req = base_request(cfg, comb, T);
    const ThermoResult s = entropy(req);
    std::vector<Table::Cell> row = {T, s.value, s.err_estimate};
    if (opt.check_fd) {
      const double h = std::max(1e-3 * T, 1e-6);
      ThermoRequest up = req, dn = req;
      up.temperature = T + h;
      dn.temperature = T - h;
      row.push_back(-(delta_f_rotated(up).value - delta_f_rotated(dn).value) / (2.0 * h));
    }
    t.add_row(std::move(row));
  }
  emit(t, out, opt);
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt) {
  if (!cfg.spacing) throw ConfigError("sweep: lattice spacing 'a' is required");
  if (!cfg.Omega_min || !cfg.Omega_max || !cfg.Omega_steps || !cfg.gamma_min
      || !cfg.gamma_max || !cfg.gamma_steps)
    throw ConfigError("sweep: Omega_min/max/steps and gamma_min/max/steps are required");
  const double T = cfg.sweep_T ? *cfg.sweep_T : (cfg.T ? *cfg.T : 0.0);
  if (T <= 0.0) throw ConfigError("sweep: provide sweep_T (or T) > 0");
  const int nO = *cfg.Omega_steps, ng = *cfg.gamma_steps;
  if (nO < 1 || ng < 1) throw ConfigError("sweep: grid steps must be >= 1");

  struct CellOut {
    double value = std::nan("");
    double err = std::nan("");
    std::string status;
  };
  const int total = nO * ng;
  std::vector<CellOut> cells(total);
  std::atomic<int> next{0};
  const bool want_entropy = (cfg.quantity == "entropy");

  auto worker = [&]() {
    for (int i = next.fetch_add(1); i < total; i = next.fetch_add(1)) {
      const int io = i / ng, ig = i % ng;
      const double Om = *cfg.Omega_min
          + (nO > 1 ? (*cfg.Omega_max - *cfg.Omega_min) * io / (nO - 1) : 0.0);
      const double ga = *cfg.gamma_min
          + (ng > 1 ? (*cfg.gamma_max - *cfg.gamma_min) * ig / (ng - 1) : 0.0);
      CellOut& cell = cells[i];
      if (Om >= 1.0 || Om < -1.0 || ga < 0.0) {
        cell.status = "infeasible";
        continue;
      }
      try {
        const CombSpec comb(
            std::make_shared<DeltaPrimeDefect>(DeltaPrimeDefect::from_reduced(Om, ga)),
            *cfg.spacing);
        ThermoRequest req = base_request(cfg, comb, T);
        const ThermoResult r = want_entropy ? entropy(req) : delta_f_rotated(req);
        cell.value = r.value;
        cell.err = r.err_estimate;
        cell.status = "ok";
      } catch (const Error& e) {
        cell.status = std::string("error: ") + e.what();
      }
    }
  };
  const int nw = std::min(resolve_workers(opt, cfg), total);
  std::vector<std::thread> pool;
  for (int i = 0; i < nw - 1; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  Table t({"Omega", "gamma", "T", "value", "err", "status"});
  for (int i = 0; i < total; ++i) {
    const int io = i / ng, ig = i % ng;
    const double Om = *cfg.Omega_min
        + (nO > 1 ? (*cfg.Omega_max - *cfg.Omega_min) * io / (nO - 1) : 0.0);
    const double ga = *cfg.gamma_min
        + (ng > 1 ? (*cfg.gamma_max - *cfg.gamma_min) * ig / (ng - 1) : 0.0);
    t.add_row({Om, ga, T, cells[i].value, cells[i].err, cells[i].status});
  }
  emit(t, out, opt);
  return 0;
}

int cmd_single(const RunConfig& cfg, std::ostream& out, const CommandOptions& opt) {
  if (cfg.potential != "delta_prime")
    throw ConfigError("single: only the delta_prime defect is supported");
  if (!cfg.w0 || !cfg.w1) throw ConfigError("single: w0 and w1 are required");
  if (*cfg.w0 <= 0.0) throw ConfigError("single: w0 must be positive");
  const DeltaPrimeDefect defect(*cfg.w0, *cfg.w1);
  const Tolerances tol = tolerances(cfg);
  Table t({"T", "delta_f", "entropy", "err"});
  for (double T : temperature_grid(cfg)) {
    const ThermoResult f = delta_f_single_defect(defect, T, tol);
    const ThermoResult s = entropy_single_defect(defect, T, tol);
    t.add_row({T, f.value, s.value, f.err_estimate + s.err_estimate});
  }
  emit(t, out, opt);
  return 0;
}

// ---------------------------------------------------------------------------
// validate: the invariant battery
// ---------------------------------------------------------------------------

namespace {

struct Check {
  std::string name;
  bool pass;
  double measured;
  double threshold;
  std::string note;
};

void run_check(std::vector<Check>& checks, const std::string& name, double threshold,
               const std::function<double()>& measure, const std::string& note = "") {
  Check c{name, false, std::nan(""), threshold, note};
  try {
    c.measured = measure();
    c.pass = c.measured < threshold;
  } catch (const Error& e) {
    c.note = e.what();
  }
  checks.push_back(c);
}

double unitarity_defect(const ScatteringModel& m) {
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const double k = 1e-3 * std::pow(50.0 / 1e-3, i / 99.0);
    const ScatteringAmplitudes s = m.amplitudes(Complex(k, 0));
    worst = std::max(worst, std::abs(std::norm(s.t) + std::norm(s.r_right) - 1.0));
    worst = std::max(worst,
                     std::abs(std::abs(s.t * s.t - s.r_right * s.r_left) - 1.0));
  }
  return worst;
}

double dos_norm_defect(const CombSpec& comb, int nbands) {
  const auto bands = band_edges(comb, 40.0);
  double worst = 0.0;
  num::QuadratureSpec qs;
  qs.rel_tol = 1e-9;
  qs.abs_tol = 1e-11;
  qs.max_panels = 20000;
  for (int i = 0; i < std::min<int>(nbands, bands.size()); ++i) {
    const Band& b = bands[i];
    auto f = [&](double w) {
      const double h = comb.h(Complex(w, 0)).real();
      const double s2 = (1.0 - h) * (1.0 + h);
      if (s2 <= 0.0) return 0.0;
      return std::abs(comb.h_deriv(Complex(w, 0)).real()) / std::sqrt(s2);
    };
    const double mid = 0.5 * (b.omega_min + b.omega_max);
    num::QuadratureSpec lo = qs;
    lo.transform = (b.omega_min > 1e-12) ? num::Transform::SqrtEdgeLower
                                         : num::Transform::None;
    num::QuadratureSpec hi = qs;
    hi.transform = num::Transform::SqrtEdgeUpper;
    const double v = num::integrate_adaptive(f, b.omega_min, mid, lo).value
                     + num::integrate_adaptive(f, mid, b.omega_max, hi).value;
    // theta sweeps the full zone for interior bands; a gapless bottom starts
    // at arccos h(0) instead of a zone edge
    const double h_hi = comb.h(Complex(b.omega_max, 0)).real();
    const double theta_hi = std::acos(std::clamp(h_hi, -1.0, 1.0));
    const double expected = std::abs(theta_hi - b.theta_at_min);
    worst = std::max(worst, std::abs(v - expected));
  }
  return worst;
}

}  // namespace

int cmd_validate(const RunConfig& cfg, std::ostream& out, const CommandOptions&) {
  const Tolerances tol = tolerances(cfg);
  const auto dd = std::make_shared<DeltaPrimeDefect>(3.0, 2.0);
  const auto pt = std::make_shared<PoschlTellerDefect>(0.5);
  const auto fr = std::make_shared<DeltaPrimeDefect>(0.0, 0.0);
  const CombSpec cdd(dd, 1.0), cpt(pt, 1.0), cfr(fr, 1.0);

  std::vector<Check> checks;
  auto request = [&](const CombSpec& c, double T, double alpha = kPi / 4) {
    ThermoRequest r{c};
    r.temperature = T;
    r.alpha = alpha;
    r.tol = tol;
    return r;
  };

  run_check(checks, "unitarity delta_prime", 1e-12, [&] { return unitarity_defect(*dd); });
  run_check(checks, "unitarity poschl_teller", 1e-12, [&] { return unitarity_defect(*pt); });

  for (const auto& [comb, name] : {std::pair{&cdd, "delta_prime"}, {&cpt, "poschl_teller"}}) {
    run_check(checks, std::string("real_axis vs rotated ") + name, 1e-6, [&, comb] {
      const double ra = delta_f_real_axis(request(*comb, 1.0)).value;
      const double ro = delta_f_rotated(request(*comb, 1.0)).value;
      return std::abs(ra - ro) / std::abs(ro);
    });
    run_check(checks, std::string("alpha independence ") + name, 1e-8, [&, comb] {
      const double v1 = delta_f_rotated(request(*comb, 1.0, kPi / 6)).value;
      const double v2 = delta_f_rotated(request(*comb, 1.0, kPi / 3)).value;
      return std::abs(v1 - v2) / std::abs(v2);
    });
    run_check(checks, std::string("box oracle ") + name, 1e-4, [&, comb] {
      const double bx = oracle::delta_f_bruteforce(*comb, 1.0, 200, 40.0);
      const double ro = delta_f_rotated(request(*comb, 1.0)).value;
      return std::abs(bx - ro) / std::abs(ro);
    });
    run_check(checks, std::string("dos normalization ") + name, 1e-6,
              [&, comb] { return dos_norm_defect(*comb, 6); });
    // reported as the ratio |S - fd| / max(1e-5 |S|, 1e-8)
    run_check(checks, std::string("entropy fd consistency ") + name, 1.0, [&, comb] {
      const double S = entropy(request(*comb, 1.0)).value;
      const double h = 1e-3;
      const double fd = -(delta_f_rotated(request(*comb, 1.0 + h)).value
                          - delta_f_rotated(request(*comb, 1.0 - h)).value) / (2.0 * h);
      return std::abs(S - fd) / std::max(1e-5 * std::abs(S), 1e-8);
    });
  }

  // Matsubara splice: F_sub - E0_sub - C(T) must reproduce the rotated value
  run_check(checks, "matsubara identity delta_prime", 1e-6, [&] {
    ThermoRequest r = request(cdd, 1.0);
    const ThermoResult f = free_energy_matsubara(r);
    const double e0 = vacuum_energy(cdd, tol).value;
    const double ro = delta_f_rotated(r).value;
    return std::abs(f.value - e0 - f.diag.background_thermal_term - ro);
  });
  run_check(checks, "matsubara zero free comb", 1e-10, [&] {
    ThermoRequest r = request(cfr, 1.0);
    return std::abs(free_energy_matsubara(r).value);
  });
  run_check(checks, "vacuum anchor delta_prime", 1e-4, [&] {
    const double e0 = vacuum_energy(cdd, tol).value;
    auto F = [&](double T) { return free_energy_matsubara(request(cdd, T)).value; };
    const double f1 = F(0.1), f2 = F(0.05), f3 = F(0.025);
    const double r1 = (4.0 * f2 - f1) / 3.0, r2 = (4.0 * f3 - f2) / 3.0;
    return std::abs((16.0 * r2 - r1) / 15.0 - e0);
  });
  run_check(checks, "free comb dos", 1e-12, [&] {
    double worst = 0.0;
    for (double w : {0.37, 1.91, 4.13, 9.77})
      worst = std::max(worst, std::abs(density_of_states(cfr, w) - 1.0 / kPi));
    return worst;
  });
  run_check(checks, "free comb blackbody", 1e-6, [&] {
    const double v = delta_f_rotated(request(cfr, 1.0)).value;
    return std::abs(v + kPi / 6.0) / (kPi / 6.0);
  });

  int failures = 0;
  out << "check                                          status   measured      threshold\n";
  for (const Check& c : checks) {
    if (!c.pass) ++failures;
    out << c.name;
    for (size_t i = c.name.size(); i < 47; ++i) out << ' ';
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%-8s %-13.3e %-13.3e", c.pass ? "PASS" : "FAIL",
                  c.measured, c.threshold);
    out << buf;
    if (!c.note.empty()) out << "  [" << c.note << "]";
    out << "\n";
  }
  out << (failures == 0 ? "all checks passed\n"
                        : std::to_string(failures) + " check(s) failed\n");
  return failures == 0 ? 0 : 3;
}

}  // namespace comb::cli
