#include "comb/thermo.hpp"

#include <cmath>

#include "comb/errors.hpp"

namespace comb {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2 = 0.69314718055994531;

// Band-branch square root: sqrt(h^2 - 1) on the sheet that behaves like +h at
// large |h|. Its only cut is the physical band segment h in [-1, 1]; the
// principal inner root keeps it continuous along any ray avoiding that cut.
Complex sqrt_band(Complex h) {
  const Complex w = 1.0 - 1.0 / (h * h);
  if (w.real() < 0.0 && std::abs(w.imag()) <= 1e-14 * std::abs(w))
    throw BranchCut("sqrt(h_V^2 - 1): argument on the branch cut at machine precision");
  return h * std::sqrt(w);
}

void check_alpha(double alpha) {
  if (alpha < 0.02 || alpha > 0.5 * kPi - 0.02)
    throw AlphaTooClose("rotation angle within 0.02 of 0 or pi/2");
}

void check_tolerances(const Tolerances& tol) {
  if (tol.rel_tol < 1e-12) throw Error("rel_tol below the supported 1e-12 floor");
  if (tol.abs_tol <= 0.0) throw Error("abs_tol must be positive");
}
}  // namespace

Complex boltzmann(Complex omega, double temperature) {
  const Complex u = 1.0 - std::exp(-omega / temperature);
  if (std::abs(u) < 1e-300)
    throw BranchPoint("boltzmann: omega at a branch point of log(1 - e^{-w/T})");
  return temperature * std::log(u);
}

Complex boltzmann_dT(Complex omega, double temperature) {
  const Complex x = omega / temperature;
  const Complex emx = std::exp(-x);
  const Complex u = 1.0 - emx;
  if (std::abs(u) < 1e-300)
    throw BranchPoint("boltzmann_dT: omega at a branch point of log(1 - e^{-w/T})");
  return std::log(u) - x * emx / u;
}

double rotated_integrand(const CombSpec& comb, double xi, double alpha, double temperature) {
  const Complex ray = std::polar(1.0, alpha);
  const Complex k = xi * ray;
  const Complex h = comb.h(k);
  const Complex dv = -ray * comb.h_deriv(k) / sqrt_band(h);
  return (1.0 / kPi) * std::imag(boltzmann(k, temperature) * dv);
}

namespace {

// Shared driver for the rotated-ray integrals of B-like weights.
ThermoResult rotated_integral(const CombSpec& comb, double temperature, double alpha,
                              const Tolerances& tol, double cutoff,
                              const std::function<Complex(Complex)>& weight) {
  check_alpha(alpha);
  check_tolerances(tol);
  const Complex ray = std::polar(1.0, alpha);
  auto f = [&](double xi) -> double {
    if (xi == 0.0) return 0.0;
    const Complex k = xi * ray;
    const Complex h = comb.h(k);
    const Complex dv = -ray * comb.h_deriv(k) / sqrt_band(h);
    return (1.0 / kPi) * std::imag(weight(k) * dv);
  };
  const double scale = temperature / std::cos(alpha);
  double xi_cut = scale * (std::log(1.0 / tol.abs_tol) + 5.0);
  if (cutoff > 0.0) {
    xi_cut = cutoff;
    const double bound = std::abs(f(xi_cut)) * scale;
    if (bound > tol.abs_tol)
      throw TruncationUnreachable("rotated integral: user cutoff too small for abs_tol");
  }
  num::QuadratureSpec qs;
  qs.rel_tol = tol.rel_tol * 0.1;
  qs.abs_tol = tol.abs_tol * 0.1;
  qs.max_panels = 20000;
  // the Boltzmann log singularity at xi = 0 likes a dedicated panel set
  const double split = std::min(2.0 * temperature, 0.5 * xi_cut);
  auto r1 = num::integrate_adaptive(f, 0.0, split, qs);
  auto r2 = num::integrate_adaptive(f, split, xi_cut, qs);
  ThermoResult out;
  out.value = r1.value + r2.value;
  out.diag.panels = r1.panels + r2.panels;
  out.diag.truncation_bound = std::abs(f(xi_cut)) * scale;
  out.err_estimate = r1.err_estimate + r2.err_estimate + out.diag.truncation_bound;
  return out;
}

}  // namespace

ThermoResult delta_f_rotated(const ThermoRequest& req) {
  if (req.temperature <= 0.0) throw Error("delta_f_rotated: temperature must be positive");
  const double T = req.temperature;
  ThermoResult out = rotated_integral(req.comb, T, req.alpha, req.tol, req.cutoff,
                                      [T](Complex k) { return boltzmann(k, T); });
  out.method = Method::Rotated;
  return out;
}

ThermoResult entropy(const ThermoRequest& req) {
  if (req.temperature <= 0.0) throw Error("entropy: temperature must be positive");
  const double T = req.temperature;
  ThermoResult out = rotated_integral(req.comb, T, req.alpha, req.tol, req.cutoff,
                                      [T](Complex k) { return -boltzmann_dT(k, T); });
  out.method = Method::Rotated;
  return out;
}

ThermoResult delta_f_massive(const ThermoRequest& req) {
  if (req.temperature <= 0.0) throw Error("delta_f_massive: temperature must be positive");
  const double T = req.temperature, m = req.mass;
  if (m < 0.0) throw Error("delta_f_massive: mass must be non-negative");
  double bound_term = 0.0;
  for (const BoundState& bs : req.comb.model().bound_states()) {
    if (bs.kappa >= m)
      throw UnstableSpectrum("delta_f_massive: bound state at or above the mass");
    bound_term += T * std::log1p(-std::exp(-std::sqrt(m * m - bs.kappa * bs.kappa) / T));
  }
  const Complex ray2 = std::polar(1.0, 2.0 * req.alpha);
  ThermoResult out = rotated_integral(
      req.comb, T, req.alpha, req.tol, req.cutoff, [&](Complex k) {
        const double xi = std::abs(k);
        const Complex z = std::sqrt(xi * xi * ray2 + m * m);
        return boltzmann(z, T);
      });
  out.value += bound_term;
  out.method = Method::Rotated;
  return out;
}

// ---------------------------------------------------------------------------
// real-frequency band sum
// ---------------------------------------------------------------------------

ThermoResult delta_f_real_axis(const ThermoRequest& req) {
  if (req.temperature <= 0.0) throw Error("delta_f_real_axis: temperature must be positive");
  check_tolerances(req.tol);
  const double T = req.temperature;
  const CombSpec& comb = req.comb;
  const double a = comb.spacing();
  double omega_cut = T * (std::log(1.0 / req.tol.abs_tol) + 5.0);
  const double auto_bound = 2.0 * (a / kPi) * T * T * std::exp(-omega_cut / T);
  if (req.cutoff > 0.0) {
    omega_cut = req.cutoff;
    if (2.0 * (a / kPi) * T * T * std::exp(-omega_cut / T) > req.tol.abs_tol)
      throw TruncationUnreachable("delta_f_real_axis: user omega_cut too small for abs_tol");
  }

  auto g = [&](double w) -> double {
    const double h = comb.h(Complex(w, 0)).real();
    const double s2 = (1.0 - h) * (1.0 + h);
    if (s2 <= 0.0) return 0.0;
    const double hp = comb.h_deriv(Complex(w, 0)).real();
    return std::abs(hp) / std::sqrt(s2) * boltzmann(Complex(w, 0), T).real() / kPi;
  };

  num::QuadratureSpec qs;
  qs.rel_tol = req.tol.rel_tol * 0.1;
  qs.abs_tol = req.tol.abs_tol * 0.1;
  qs.max_panels = 20000;

  ThermoResult out;
  out.method = Method::RealAxis;
  for (const Band& b : band_edges(comb, omega_cut)) {
    const double mid = 0.5 * (b.omega_min + b.omega_max);
    num::QuadratureSpec lo_spec = qs;
    // gapless bottoms carry no edge singularity at omega_min
    lo_spec.transform = (b.omega_min > 1e-12) ? num::Transform::SqrtEdgeLower
                                              : num::Transform::None;
    auto r1 = num::integrate_adaptive(g, b.omega_min, mid, lo_spec);
    num::QuadratureSpec hi_spec = qs;
    hi_spec.transform = num::Transform::SqrtEdgeUpper;
    auto r2 = num::integrate_adaptive(g, mid, b.omega_max, hi_spec);
    out.value += r1.value + r2.value;
    out.err_estimate += r1.err_estimate + r2.err_estimate;
    out.diag.panels += r1.panels + r2.panels;
  }
  out.diag.truncation_bound = (req.cutoff > 0.0)
      ? 2.0 * (a / kPi) * T * T * std::exp(-omega_cut / T) : auto_bound;
  out.err_estimate += out.diag.truncation_bound;
  return out;
}

// ---------------------------------------------------------------------------
// subtracted Matsubara representation and vacuum energy
// ---------------------------------------------------------------------------

namespace {

// P_sub(xi) = Int_0^pi (d theta/pi) log| f_theta(i xi) / f_bg(i xi) |,
// evaluated through the closed form of the theta integral:
//   Int (d theta/pi) log|cos theta - A| = log[(|A|+sqrt(A^2-1))/2]  (|A|>1)
//                                       = -log 2                    (|A|<=1)
double p_sub(const CombSpec& comb, double xi) {
  const MatsubaraAxisData md = comb.model().matsubara_axis(xi, comb.spacing());
  const double la = md.log_h_excess + xi * comb.spacing() - kLog2;  // log|h(i xi)|
  if (la <= 0.0) return -xi * comb.spacing() - md.bg_log_excess;    // |h| <= 1 window
  const double corr = (la > 20.0)
      ? 0.0
      : std::log1p(std::sqrt(std::max(0.0, 1.0 - std::exp(-2.0 * la)))) - kLog2;
  return md.log_h_excess - md.bg_log_excess + corr;
}

// Thermal content C(T) of the subtraction background:
//   C(T) = (1/pi) Int_0^inf [omega a - arg G(omega)] / (e^{omega/T} - 1) d omega
double background_thermal_term(const CombSpec& comb, double temperature,
                               const Tolerances& tol) {
  const double a = comb.spacing();
  auto f = [&](double w) -> double {
    if (w == 0.0) return 0.0;
    const double phi = w * a - comb.model().background_phase(w);
    return phi / std::expm1(w / temperature) / kPi;
  };
  num::QuadratureSpec qs;
  qs.rel_tol = std::max(tol.rel_tol * 0.1, 1e-13);
  qs.abs_tol = tol.abs_tol * 0.1;
  qs.max_panels = 20000;
  const double cut = temperature * (std::log(1.0 / qs.abs_tol) + 10.0);
  auto r = num::integrate_adaptive(f, 0.0, cut, qs);
  return r.value;
}

// Integral of p_sub over [x0, inf): adaptive pieces plus the analytic cubic
// tail estimate c/xi^3 -> rho(X) X / 2.
struct TailResult {
  double value;
  double err;
  int panels;
};
TailResult p_sub_tail(const CombSpec& comb, double x0, const Tolerances& tol) {
  auto f = [&](double xi) { return p_sub(comb, xi); };
  num::QuadratureSpec qs;
  qs.rel_tol = std::max(tol.rel_tol * 0.1, 1e-13);
  qs.abs_tol = tol.abs_tol * 0.05;
  qs.max_panels = 20000;
  double X = std::max(2.0 * x0, 64.0 / comb.spacing());
  while (std::abs(f(X)) * X * 0.5 > tol.abs_tol * 0.25 && X < 1e9) X *= 2.0;
  TailResult out{0.0, 0.0, 0};
  double lo = x0;
  for (double hi = std::min(2.0 * x0 + 16.0, X); ; hi = std::min(hi * 4.0, X)) {
    auto r = num::integrate_adaptive(f, lo, hi, qs);
    out.value += r.value;
    out.err += r.err_estimate;
    out.panels += r.panels;
    if (hi >= X) break;
    lo = hi;
  }
  const double tail = f(X) * X * 0.5;  // exact for a pure 1/xi^3 remainder
  out.value += tail;
  out.err += std::abs(tail) * 0.5;
  return out;
}

}  // namespace

ThermoResult free_energy_matsubara(const ThermoRequest& req) {
  if (req.temperature <= 0.0)
    throw Error("free_energy_matsubara: temperature must be positive");
  check_tolerances(req.tol);
  const double T = req.temperature;
  const CombSpec& comb = req.comb;
  const double h = 2.0 * kPi * T;

  // pick the crossover term count so the Euler-Maclaurin h^2 correction of
  // the trapezoid-vs-integral splice is below tolerance
  long L = 8;
  double em = 0.0;
  for (;; L *= 2) {
    if (L > 1000000)
      throw SumNotConverged("free_energy_matsubara: term budget exhausted");
    const double x0 = (L + 0.5) * h;
    const double d = 0.05 * x0;
    const double fp = (p_sub(comb, x0 + d) - p_sub(comb, x0 - d)) / (2.0 * d);
    em = -h * h * fp / (48.0 * kPi);
    if (std::abs(em) < 0.25 * req.tol.abs_tol || L >= 262144) break;
  }

  double sum = 0.5 * p_sub(comb, 0.0);
  for (long l = 1; l <= L; ++l) sum += p_sub(comb, l * h);
  const double x0 = (L + 0.5) * h;
  TailResult tail = p_sub_tail(comb, x0, req.tol);

  ThermoResult out;
  out.method = Method::Matsubara;
  out.value = T * sum + tail.value / (2.0 * kPi) + em;
  out.err_estimate = tail.err / (2.0 * kPi) + std::abs(em) * 0.5;
  out.diag.panels = tail.panels;
  out.diag.matsubara_terms = L;
  out.diag.truncation_bound = std::abs(em);
  out.diag.background_thermal_term = background_thermal_term(comb, T, req.tol);
  return out;
}

ThermoResult vacuum_energy(const CombSpec& comb, const Tolerances& tol) {
  check_tolerances(tol);
  auto f = [&](double xi) { return p_sub(comb, xi); };
  num::QuadratureSpec qs;
  qs.rel_tol = std::max(tol.rel_tol * 0.1, 1e-13);
  qs.abs_tol = tol.abs_tol * 0.05;
  qs.max_panels = 20000;
  const double x0 = 8.0 / comb.spacing();
  auto head = num::integrate_adaptive(f, 0.0, x0, qs);
  TailResult tail = p_sub_tail(comb, x0, tol);
  ThermoResult out;
  out.method = Method::Matsubara;
  out.value = (head.value + tail.value) / (2.0 * kPi);
  out.err_estimate = (head.err_estimate + tail.err) / (2.0 * kPi);
  out.diag.panels = head.panels + tail.panels;
  return out;
}

// ---------------------------------------------------------------------------
// single defect (a -> infinity limit)
// ---------------------------------------------------------------------------

ThermoResult delta_f_single_defect(const DeltaPrimeDefect& defect, double temperature,
                                   const Tolerances& tol) {
  if (defect.w0() <= 0.0) throw Error("delta_f_single_defect: w0 must be positive");
  if (temperature <= 0.0) throw Error("delta_f_single_defect: temperature must be positive");
  check_tolerances(tol);
  const double T = temperature;
  auto f = [&](double k) -> double {
    if (k == 0.0) return 0.0;
    return (T / kPi) * phase_shift_derivative(defect, k) * std::log1p(-std::exp(-k / T));
  };
  num::QuadratureSpec qs;
  qs.rel_tol = tol.rel_tol * 0.1;
  qs.abs_tol = tol.abs_tol * 0.1;
  qs.max_panels = 20000;
  qs.transform = num::Transform::ExpTail;
  qs.tail_scale = T;
  auto r = num::integrate_exp_tail(f, 0.0, qs);
  ThermoResult out;
  out.method = Method::RealAxis;
  out.value = r.value;
  out.err_estimate = r.err_estimate;
  out.diag.panels = r.panels;
  out.diag.truncation_bound = r.truncation_bound;
  return out;
}

ThermoResult entropy_single_defect(const DeltaPrimeDefect& defect, double temperature,
                                   const Tolerances& tol) {
  if (defect.w0() <= 0.0) throw Error("entropy_single_defect: w0 must be positive");
  if (temperature <= 0.0) throw Error("entropy_single_defect: temperature must be positive");
  check_tolerances(tol);
  const double T = temperature;
  auto f = [&](double k) -> double {
    if (k == 0.0) return 0.0;
    const double x = k / T;
    const double boltz = -std::log1p(-std::exp(-x)) + x / std::expm1(x);
    return (1.0 / kPi) * phase_shift_derivative(defect, k) * boltz;
  };
  num::QuadratureSpec qs;
  qs.rel_tol = tol.rel_tol * 0.1;
  qs.abs_tol = tol.abs_tol * 0.1;
  qs.max_panels = 20000;
  qs.tail_scale = T;
  auto r = num::integrate_exp_tail(f, 0.0, qs);
  ThermoResult out;
  out.method = Method::RealAxis;
  out.value = r.value;
  out.err_estimate = r.err_estimate;
  out.diag.panels = r.panels;
  out.diag.truncation_bound = r.truncation_bound;
  return out;
}

}  // namespace comb
