#include "comb/oracle.hpp"

#include <cmath>

#include "comb/errors.hpp"
#include "comb/numerics.hpp"
#include "comb/thermo.hpp"

namespace comb::oracle {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

BoxSpectrum box_spectrum(const CombSpec& comb, int cells, double omega_cut) {
  if (cells < 8) throw Error("box_spectrum: need at least 8 cells");
  if (omega_cut <= 0.0) throw Error("box_spectrum: omega_cut must be positive");

  BoxSpectrum out;
  out.cells = cells;
  out.omega_cut = omega_cut;
  out.roots.resize(cells);

  const double step = kPi / (256.0 * comb.spacing());
  const int n = static_cast<int>(std::ceil(omega_cut / step)) + 1;
  std::vector<double> w(n), hv(n);
  for (int i = 0; i < n; ++i) {
    w[i] = std::min(i * step, omega_cut);
    hv[i] = comb.h(Complex(std::max(w[i], 1e-300), 0)).real();
  }

  num::RootSpec rs;
  rs.tol_abs = 1e-13;
  for (int i = 0; i < cells; ++i) {
    const double theta = (i + 0.5) * kPi / cells;
    const double c = std::cos(theta);
    auto g = [&](double x) { return c - comb.h(Complex(x, 0)).real(); };
    for (int j = 0; j + 1 < n; ++j) {
      const double gj = c - hv[j], gk = c - hv[j + 1];
      if (gj == 0.0) {
        out.roots[i].push_back(w[j]);
      } else if (gj * gk < 0.0) {
        out.roots[i].push_back(
            num::find_root_bracketed(g, std::max(w[j], 1e-300), w[j + 1], rs));
      }
    }
  }
  return out;
}

double delta_f_bruteforce(const CombSpec& comb, double temperature, int cells,
                          double omega_cut) {
  if (temperature <= 0.0) throw Error("delta_f_bruteforce: temperature must be positive");
  const BoxSpectrum box = box_spectrum(comb, cells, omega_cut);
  double total = 0.0;
  for (const auto& per_theta : box.roots) {
    for (double w : per_theta) {
      total += temperature * std::log1p(-std::exp(-w / temperature));
    }
  }
  return total / cells;
}

}  // namespace comb::oracle
