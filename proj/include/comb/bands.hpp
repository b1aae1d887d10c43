#pragma once

#include <optional>
#include <vector>

#include "comb/scattering.hpp"

namespace comb {

// Periodic comb: one defect per cell, lattice spacing a >= support width.
class CombSpec {
 public:
  CombSpec(ModelPtr model, double spacing);

  const ScatteringModel& model() const { return *model_; }
  ModelPtr model_ptr() const { return model_; }
  double spacing() const { return spacing_; }

  Complex h(Complex k) const { return model_->lattice_h(k, spacing_); }
  Complex h_deriv(Complex k) const { return model_->lattice_h_deriv(k, spacing_); }

 private:
  ModelPtr model_;
  double spacing_;
};

// Allowed band [omega_min, omega_max]; theta_at_min records which Brillouin
// edge the lower band edge touches (0 or pi). A gapless bottom (band reaching
// omega = 0 with |h_V(0)| < 1) carries theta_at_min = arccos h_V(0).
struct Band {
  int index = 0;  // 1-based
  double omega_min = 0.0;
  double omega_max = 0.0;
  double theta_at_min = 0.0;
};

// secular function f_theta(k) = cos(theta) - h_V(k)
Complex secular(const CombSpec& comb, double theta, Complex k);

// All bands with omega_min < omega_cut (at most max_bands). Edges refined to
// |d omega| < 1e-12 * max(1, omega). Degenerate (touching) edges of gapless
// combs are reported as zero-width gaps. Throws ScanResolutionExceeded if
// refinement cannot separate structure at the finest scan step.
std::vector<Band> band_edges(const CombSpec& comb, double omega_cut, int max_bands = 10000);

// theta(omega) = arccos h_V(omega) in [0, pi]; nullopt marks a forbidden
// frequency (inside a gap).
std::optional<double> dispersion_theta(const CombSpec& comb, double omega);

// Per-cell density of states |Re d theta/d omega| / pi; zero in gaps.
// Throws EdgeSingularity within 1e-9 of a band edge, where the inverse
// square root blows up.
double density_of_states(const CombSpec& comb, double omega);

}  // namespace comb
