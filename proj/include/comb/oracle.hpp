#pragma once

#include <vector>

#include "comb/bands.hpp"

namespace comb::oracle {

// Finite-box spectrum: theta sampled at midpoints theta_i = (i - 1/2) pi / N
// (edge values theta in {0, pi} carry double roots and would bias the
// Riemann sum). roots[i] holds the ascending frequencies solving
// cos(theta_i) = h_V(omega) in (0, omega_cut].
struct BoxSpectrum {
  int cells = 0;
  double omega_cut = 0.0;
  std::vector<std::vector<double>> roots;
};

BoxSpectrum box_spectrum(const CombSpec& comb, int cells, double omega_cut);

// Brute-force Delta_T F: per-cell theta average of Boltzmann sums over the
// box spectrum. Deliberately simple; used only by tests and `validate`.
double delta_f_bruteforce(const CombSpec& comb, double temperature, int cells,
                          double omega_cut);

}  // namespace comb::oracle
