#include "comb/scattering.hpp"

#include <cmath>

#include "comb/errors.hpp"

namespace comb {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kPoleTol = 1e-12;

// sin(z)/z with the removable singularity handled by series.
Complex sinc_z(Complex z) {
  if (std::abs(z) < 1e-2) {
    const Complex z2 = z * z;
    return 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
  }
  return std::sin(z) / z;
}
}  // namespace

Complex lattice_h_from_amplitudes(const ScatteringAmplitudes& s, Complex k, double a) {
  const Complex det = s.t * s.t - s.r_right * s.r_left;
  const Complex ika = Complex(0, 1) * k * a;
  return (std::exp(-ika) + std::exp(ika) * det) / (2.0 * s.t);
}

Complex ScatteringModel::lattice_h(Complex k, double a) const {
  return lattice_h_from_amplitudes(amplitudes(k), k, a);
}

// ---------------------------------------------------------------------------
// delta-delta'
// ---------------------------------------------------------------------------

DeltaPrimeDefect::DeltaPrimeDefect(double w0, double w1) : w0_(w0), w1_(w1) {
  if (w0 < 0.0) throw Error("DeltaPrimeDefect: w0 must be >= 0");
  gamma_ = w0 / (1.0 + w1 * w1);
  Omega_ = (w1 * w1 - 1.0) / (w1 * w1 + 1.0);
}

DeltaPrimeDefect DeltaPrimeDefect::from_reduced(double Omega, double gamma) {
  if (Omega >= 1.0 || Omega < -1.0)
    throw Error("DeltaPrimeDefect::from_reduced: need -1 <= Omega < 1");
  if (gamma < 0.0) throw Error("DeltaPrimeDefect::from_reduced: gamma must be >= 0");
  const double w1 = std::sqrt((1.0 + Omega) / (1.0 - Omega));
  const double w0 = 2.0 * gamma / (1.0 - Omega);
  return DeltaPrimeDefect(w0, w1);
}

ScatteringAmplitudes DeltaPrimeDefect::amplitudes(Complex k) const {
  const double s1 = w1_ * w1_ + 1.0;
  const Complex den = 2.0 * k * s1 + Complex(0, 1) * w0_;
  // pole sits at k = -i gamma / 2
  if (std::abs(den) < kPoleTol * std::max(1.0, std::abs(2.0 * k * s1))
      || std::abs(den) < kPoleTol)
    throw PoleEvaluation("delta-delta' amplitudes evaluated at the k = -i*gamma/2 pole");
  ScatteringAmplitudes out;
  out.t = -2.0 * k * (w1_ * w1_ - 1.0) / den;
  out.r_right = (-4.0 * k * w1_ - Complex(0, 1) * w0_) / den;
  out.r_left = (4.0 * k * w1_ - Complex(0, 1) * w0_) / den;
  return out;
}

Complex DeltaPrimeDefect::lattice_h(Complex k, double a) const {
  if (std::abs(Omega_) < 1e-14)
    throw DegenerateLattice("delta-delta' comb with |w1| = 1: t vanishes identically");
  return -(std::cos(k * a) + 0.5 * gamma_ * a * sinc_z(k * a)) / Omega_;
}

Complex DeltaPrimeDefect::lattice_h_deriv(Complex k, double a) const {
  if (std::abs(Omega_) < 1e-14)
    throw DegenerateLattice("delta-delta' comb with |w1| = 1: t vanishes identically");
  const Complex ka = k * a;
  Complex d;  // d/dk [ sin(ka)/k ]
  if (std::abs(ka) < 1e-2) {
    const Complex ka2 = ka * ka;
    d = a * a * a * k * (-1.0 / 3.0) * (1.0 - ka2 / 10.0 * (1.0 - 3.0 * ka2 / 28.0));
  } else {
    d = (a * k * std::cos(ka) - std::sin(ka)) / (k * k);
  }
  return -(-a * std::sin(ka) + 0.5 * gamma_ * d) / Omega_;
}

MatsubaraAxisData DeltaPrimeDefect::matsubara_axis(double xi, double a) const {
  // h(i xi) = -(cosh(xi a) + gamma sinh(xi a)/(2 xi)) / Omega
  // log|h| - xi a + log 2 = -log|Omega| + log1p(g/2xi) + log1p(sig e^{-2 xi a})
  MatsubaraAxisData out;
  const double g = gamma_;
  if (xi <= 0.0) {
    out.log_h_excess = std::log((1.0 + 0.5 * g * a) / std::abs(Omega_)) + std::log(2.0);
    out.bg_log_excess = std::log(2.0 / std::abs(Omega_));  // R(0) = 2 for g > 0, 1 for g = 0
    if (g == 0.0) out.bg_log_excess = -std::log(std::abs(Omega_));
    return out;
  }
  const double lg = std::log1p(0.5 * g / xi);
  const double sig = (2.0 * xi - g) / (2.0 * xi + g);
  const double e2 = (2.0 * xi * a < 700.0) ? std::exp(-2.0 * xi * a) : 0.0;
  out.log_h_excess = -std::log(std::abs(Omega_)) + lg + std::log1p(sig * e2);
  if (g == 0.0) {
    out.bg_log_excess = -std::log(std::abs(Omega_));
  } else {
    // R = N/D, N = 4x^2+4gx+2g^2, D = 4x^2+2gx+g^2: matches (1+g/2x) to O(1/x^3)
    const double D = 4.0 * xi * xi + 2.0 * g * xi + g * g;
    out.bg_log_excess = -std::log(std::abs(Omega_)) + std::log1p((2.0 * g * xi + g * g) / D);
  }
  return out;
}

double DeltaPrimeDefect::background_phase(double omega) const {
  const double g = gamma_;
  if (g == 0.0) return 0.0;
  // arg of N(-ik)/D(-ik) along real k, continuous from 0 at k = 0+
  const double thN = std::atan2(-4.0 * g * omega, 2.0 * g * g - 4.0 * omega * omega);
  const double thD = std::atan2(-2.0 * g * omega, g * g - 4.0 * omega * omega);
  return thN - thD;
}

double phase_shift(const DeltaPrimeDefect& d, double k) {
  const double g = d.gamma();
  if (g == 0.0) throw Error("phase_shift: gamma must be nonzero");
  if (k <= 0.0) throw Error("phase_shift: k must be positive");
  const double base = std::atan(2.0 * k / g);
  return (g > 0) ? base - 0.5 * kPi : base + 0.5 * kPi;
}

double phase_shift_derivative(const DeltaPrimeDefect& d, double k) {
  const double s1 = 1.0 + d.w1() * d.w1();
  const double den = d.w0() * d.w0() + 4.0 * k * k * s1 * s1;
  return 2.0 * d.w0() * s1 / den;
}

// ---------------------------------------------------------------------------
// truncated Poschl-Teller well
// ---------------------------------------------------------------------------

PoschlTellerDefect::PoschlTellerDefect(double eps) : eps_(eps) {
  if (eps <= 0.0) throw Error("PoschlTellerDefect: eps must be positive");
  tau_ = std::tanh(0.5 * eps);
  Lambda_ = 1.0 - tau_ * tau_;
}

ScatteringAmplitudes PoschlTellerDefect::amplitudes(Complex k) const {
  const Complex I(0, 1);
  const double L = Lambda_, tau = tau_;
  const Complex Ap = L + 2.0 * k * (k + I * tau);
  const Complex Am = L + 2.0 * k * (k - I * tau);
  const Complex Delta = -std::exp(2.0 * I * eps_ * k) * L * L + Am * Am;
  if (std::abs(Delta) < kPoleTol * std::max(1.0, std::norm(k) * std::norm(k)))
    throw PoleEvaluation("Poschl-Teller amplitudes evaluated at a Delta(k) = 0 pole");
  ScatteringAmplitudes out;
  out.t = 4.0 * k * k * (k * k + 1.0) / Delta;
  out.r_right = (std::exp(I * eps_ * k) * L * Ap - std::exp(-I * eps_ * k) * L * Am) / Delta;
  out.r_left = out.r_right;
  return out;
}

// h(k) = [P cos(ka) - Q sin(ka) - L^2 cos((2 eps - a) k)] / (4 k^2 (k^2+1)),
// P = (L+2k^2)^2 - 4 k^2 tau^2, Q = 4 k tau (L+2k^2). The numerator vanishes
// identically at k = 0 (double zero) and at k = +-i, so h is regular there;
// small |k| uses the series through k^4.
namespace {
struct PtSeries {
  double c2, c4, c6;
};
PtSeries pt_series(double L, double tau, double a, double b) {
  PtSeries s;
  const double L2 = L * L;
  s.c2 = 4.0 * L - 4.0 * tau * tau - L2 * a * a / 2.0 - 4.0 * tau * L * a + L2 * b * b / 2.0;
  s.c4 = 4.0 - 2.0 * (L - tau * tau) * a * a + L2 * std::pow(a, 4) / 24.0
         + (2.0 / 3.0) * tau * L * a * a * a - 8.0 * tau * a - L2 * std::pow(b, 4) / 24.0;
  s.c6 = -2.0 * a * a + (L - tau * tau) * std::pow(a, 4) / 6.0 - L2 * std::pow(a, 6) / 720.0
         - tau * L * std::pow(a, 5) / 30.0 + (4.0 / 3.0) * tau * a * a * a
         + L2 * std::pow(b, 6) / 720.0;
  return s;
}
}  // namespace

Complex PoschlTellerDefect::lattice_h(Complex k, double a) const {
  const double L = Lambda_, tau = tau_, b = 2.0 * eps_ - a;
  if (std::abs(k) < 1e-2) {
    const PtSeries s = pt_series(L, tau, a, b);
    const Complex k2 = k * k;
    return 0.25 * (s.c2 + (s.c4 - s.c2) * k2 + (s.c6 - s.c4 + s.c2) * k2 * k2);
  }
  const Complex k2 = k * k;
  const Complex P = (L + 2.0 * k2) * (L + 2.0 * k2) - 4.0 * k2 * tau * tau;
  const Complex Q = 4.0 * k * tau * (L + 2.0 * k2);
  const Complex num = P * std::cos(k * a) - Q * std::sin(k * a) - L * L * std::cos(b * k);
  return num / (4.0 * k2 * (k2 + 1.0));
}

Complex PoschlTellerDefect::lattice_h_deriv(Complex k, double a) const {
  const double L = Lambda_, tau = tau_, b = 2.0 * eps_ - a;
  if (std::abs(k) < 1e-2) {
    const PtSeries s = pt_series(L, tau, a, b);
    return 0.5 * (s.c4 - s.c2) * k + (s.c6 - s.c4 + s.c2) * k * k * k;
  }
  const Complex k2 = k * k;
  const Complex P = (L + 2.0 * k2) * (L + 2.0 * k2) - 4.0 * k2 * tau * tau;
  const Complex Q = 4.0 * k * tau * (L + 2.0 * k2);
  const Complex Pp = 8.0 * k * (L + 2.0 * k2) - 8.0 * k * tau * tau;
  const Complex Qp = 4.0 * tau * (L + 6.0 * k2);
  const Complex ca = std::cos(k * a), sa = std::sin(k * a);
  const Complex num = P * ca - Q * sa - L * L * std::cos(b * k);
  const Complex nump = Pp * ca - P * a * sa - Qp * sa - Q * a * ca + L * L * b * std::sin(b * k);
  return (nump - num * (2.0 / k + 2.0 * k / (k2 + 1.0))) / (4.0 * k2 * (k2 + 1.0));
}

MatsubaraAxisData PoschlTellerDefect::matsubara_axis(double xi, double a) const {
  MatsubaraAxisData out;
  const double tau = tau_, L = Lambda_;
  const double g = -4.0 * tau;
  // background: log-matched Pade, N = 4x^2-2gx+2.5g^2, D = 4x^2-4gx+4g^2;
  // log(N/D) = g/(2x) + O(1/x^3), roots safely in the lower half k-plane.
  const double N = 4.0 * xi * xi - 2.0 * g * xi + 2.5 * g * g;
  const double D = 4.0 * xi * xi - 4.0 * g * xi + 4.0 * g * g;
  out.bg_log_excess = std::log(N / D);

  if (xi * a < 600.0) {
    // direct evaluation is exact and overflow-free here
    const double habs = std::abs(lattice_h(Complex(0, xi), a).real());
    out.log_h_excess = std::log(habs) - xi * a + std::log(2.0);
    return out;
  }
  // large-xi asymptote: h*(4 xi^2 (xi^2-1)) = e^{xi a}/2 [A^2 + Abar^2 e^{-2 xi a}
  //   - L^2 (e^{-2(a-eps) xi} + e^{-2 eps xi})]
  const double A = 2.0 * xi * xi - 2.0 * tau * xi - L;
  const double Ab = 2.0 * xi * xi + 2.0 * tau * xi - L;
  double corr = 0.0;
  if (2.0 * xi * a < 700.0) corr += (Ab / A) * (Ab / A) * std::exp(-2.0 * xi * a);
  if (2.0 * (a - eps_) * xi < 700.0) corr -= (L / A) * (L / A) * std::exp(-2.0 * (a - eps_) * xi);
  if (2.0 * eps_ * xi < 700.0) corr -= (L / A) * (L / A) * std::exp(-2.0 * eps_ * xi);
  // 2 log A - log(4 xi^2 (xi^2-1)), composed without forming log(4 xi^4)
  out.log_h_excess = 2.0 * std::log1p(-tau / xi - 0.5 * L / (xi * xi))
                     - std::log1p(-1.0 / (xi * xi)) + std::log1p(corr);
  return out;
}

double PoschlTellerDefect::background_phase(double omega) const {
  const double g = -4.0 * tau_;
  const double thN = std::atan2(2.0 * g * omega, 2.5 * g * g - 4.0 * omega * omega);
  const double thD = std::atan2(4.0 * g * omega, 4.0 * g * g - 4.0 * omega * omega);
  return thN - thD;
}

}  // namespace comb
