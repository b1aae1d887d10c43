#pragma once

// Independent test oracles. Everything here is deliberately simple and slow;
// nothing may call back into the code paths it checks.

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace testor {

using Complex = std::complex<double>;

// Scattering amplitudes of the truncated well V(x) = -2/cosh^2(x) on
// [-eps/2, eps/2] by fixed-step RK4 on psi'' = (V - k^2) psi, integrating
// from the transmitted side. Incidence from the left.
inline void transfer_matrix_amplitudes(double k, double eps, Complex* t_out,
                                       Complex* r_out, int steps = 4000) {
  const Complex I(0, 1);
  const double x1 = 0.5 * eps, x0 = -0.5 * eps;
  const double h = (x0 - x1) / steps;  // negative: right to left
  auto V = [](double x) { return -2.0 / (std::cosh(x) * std::cosh(x)); };
  // state y = (psi, psi')
  Complex psi = std::exp(I * k * x1);
  Complex dpsi = I * k * psi;
  auto f = [&](double x, Complex p, Complex dp, Complex* fp, Complex* fdp) {
    *fp = dp;
    *fdp = (V(x) - k * k) * p;
  };
  double x = x1;
  for (int i = 0; i < steps; ++i) {
    Complex k1p, k1d, k2p, k2d, k3p, k3d, k4p, k4d;
    f(x, psi, dpsi, &k1p, &k1d);
    f(x + 0.5 * h, psi + 0.5 * h * k1p, dpsi + 0.5 * h * k1d, &k2p, &k2d);
    f(x + 0.5 * h, psi + 0.5 * h * k2p, dpsi + 0.5 * h * k2d, &k3p, &k3d);
    f(x + h, psi + h * k3p, dpsi + h * k3d, &k4p, &k4d);
    psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
    dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    x += h;
  }
  // psi = A e^{ikx} + B e^{-ikx} on the left; t = 1/A, r = B/A
  const Complex e = std::exp(I * k * x0);
  const Complex A = (dpsi + I * k * psi) / (2.0 * I * k * e);
  const Complex B = (I * k * psi - dpsi) * e / (2.0 * I * k);
  *t_out = 1.0 / A;
  *r_out = B / A;
}

// All roots of g on (lo, hi] from a dense scan plus bisection; independent of
// the library's root machinery.
inline std::vector<double> scan_roots(const std::function<double(double)>& g, double lo,
                                      double hi, double step) {
  std::vector<double> roots;
  double xprev = lo, gprev = g(lo);
  for (double x = lo + step; x < hi + step; x += step) {
    const double xc = std::min(x, hi);
    const double gc = g(xc);
    if (gprev == 0.0) roots.push_back(xprev);
    if (gprev * gc < 0.0) {
      double a = xprev, b = xc;
      for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (a + b);
        if (g(a) * g(m) <= 0.0) b = m;
        else a = m;
        if (b - a < 1e-14 * std::max(1.0, std::abs(m))) break;
      }
      roots.push_back(0.5 * (a + b));
    }
    xprev = xc;
    gprev = gc;
    if (xc >= hi) break;
  }
  return roots;
}

}  // namespace testor
