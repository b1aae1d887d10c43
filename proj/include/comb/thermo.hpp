#pragma once

#include "comb/bands.hpp"
#include "comb/numerics.hpp"

namespace comb {

enum class Method { RealAxis, Rotated, Matsubara };

struct Tolerances {
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
};

struct ThermoRequest {
  CombSpec comb;
  double temperature = 1.0;
  double mass = 0.0;
  Method method = Method::Rotated;
  double alpha = 0.78539816339744831;  // pi/4
  Tolerances tol;
  double cutoff = 0.0;  // 0 = choose automatically from the tolerances
};

struct ThermoDiagnostics {
  int panels = 0;
  double truncation_bound = 0.0;
  long matsubara_terms = 0;
  // Thermal content of the subtraction background, C(T); satisfies
  // F_sub - E0_sub - C(T) = Delta_T F for models whose axis data stays
  // outside the band cut (see free_energy_matsubara).
  double background_thermal_term = 0.0;
};

struct ThermoResult {
  double value = 0.0;
  double err_estimate = 0.0;
  Method method = Method::Rotated;
  ThermoDiagnostics diag;
};

// Boltzmann factor B(omega, T) = T log(1 - exp(-omega/T)), principal branch.
Complex boltzmann(Complex omega, double temperature);
// dB/dT = log(1-e^{-w/T}) - (w/T)/(e^{w/T}-1), continued to complex omega.
Complex boltzmann_dT(Complex omega, double temperature);

// Temperature part of the free energy per cell, real-frequency band sum.
ThermoResult delta_f_real_axis(const ThermoRequest& req);

// Integrand of the rotated-ray representation at xi > 0:
//   (1/pi) Im[ B(xi e^{i alpha}, T) D_V(xi e^{i alpha}) ],
// with D_V = -d_xi h_V / sqrt_band(h_V^2 - 1) on the branch continuous along
// the ray (sqrt_band(h^2-1) := -h sqrt(1 - 1/h^2), principal inner root).
// Throws BranchCut if h_V^2 - 1 falls onto the cut at machine precision.
double rotated_integrand(const CombSpec& comb, double xi, double alpha, double temperature);

// Rotated-contour representation of Delta_T F; alpha-independent.
ThermoResult delta_f_rotated(const ThermoRequest& req);

// Subtracted Matsubara free energy per cell:
//   F_sub = T sum'_l P_sub(xi_l),  xi_l = 2 pi T l,  l = 0 term weighted 1/2,
// P_sub the theta-integrated log of f_theta / f_bg on the imaginary axis.
// The zero-free background f_bg = e^{-ika} G(k) renders the sum absolutely
// convergent; the free comb gives exactly zero. Diagnostics carry the
// background thermal term C(T).
ThermoResult free_energy_matsubara(const ThermoRequest& req);

// Subtracted vacuum energy: E0_sub = (1/2pi) Int_0^inf P_sub(xi) d xi,
// the T -> 0 limit of free_energy_matsubara.
ThermoResult vacuum_energy(const CombSpec& comb, const Tolerances& tol = {});

// Entropy S = -d(Delta_T F)/dT via the rotated representation with dB/dT
// substituted analytically in the integrand.
ThermoResult entropy(const ThermoRequest& req);

// Single delta-delta' defect on the line (a -> inf limit): closed-form
// phase-shift-density integrals.
ThermoResult delta_f_single_defect(const DeltaPrimeDefect& defect, double temperature,
                                   const Tolerances& tol = {});
ThermoResult entropy_single_defect(const DeltaPrimeDefect& defect, double temperature,
                                   const Tolerances& tol = {});

// Massive field: bound-state Boltzmann sum plus the rotated-ray integral with
// omega = sqrt(k^2 + m^2). Requires kappa_n < m for every bound state.
ThermoResult delta_f_massive(const ThermoRequest& req);

}  // namespace comb
