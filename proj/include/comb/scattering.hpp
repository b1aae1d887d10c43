#pragma once

#include <complex>
#include <memory>
#include <vector>

namespace comb {

using Complex = std::complex<double>;

// One defect's scattering data at complex momentum k.
struct ScatteringAmplitudes {
  Complex t;        // transmission
  Complex r_left;   // reflection, incidence from the left
  Complex r_right;  // reflection, incidence from the right
};

struct BoundState {
  double kappa;  // k = i*kappa, kappa > 0
};

// Pieces of the subtracted Matsubara integrand on the imaginary axis,
// composed so that nothing of size xi*a is ever formed explicitly:
//   log_h_excess = log|h_V(i xi)| - xi*a + log 2
//   bg_log_excess = log|2 G(i xi)| where f_bg(k) = e^{-ika} G(k) is the
//     zero-free background secular function of the subtraction scheme.
struct MatsubaraAxisData {
  double log_h_excess;
  double bg_log_excess;
};

// A compact-support (or point) defect, evaluable at complex momentum.
// Implementations are immutable and safe for concurrent use.
class ScatteringModel {
 public:
  virtual ~ScatteringModel() = default;

  virtual ScatteringAmplitudes amplitudes(Complex k) const = 0;
  virtual std::vector<BoundState> bound_states() const { return {}; }
  virtual double support_width() const = 0;

  // Lattice function h_V(k) of Bloch theory, cos(theta) = h_V(omega) on the
  // spectrum. The base implementation assembles it from the amplitudes;
  // models override with closed forms that stay stable near k = 0 and at
  // large imaginary momentum.
  virtual Complex lattice_h(Complex k, double a) const;
  virtual Complex lattice_h_deriv(Complex k, double a) const = 0;

  virtual MatsubaraAxisData matsubara_axis(double xi, double a) const = 0;
  // Continuous arg G(omega) - arg G(0+) along the positive real axis.
  virtual double background_phase(double omega) const = 0;
};

using ModelPtr = std::shared_ptr<const ScatteringModel>;

// Generic h_V from Eq.-style amplitude assembly; used directly by the base
// class and by tests to validate the closed forms against it.
Complex lattice_h_from_amplitudes(const ScatteringAmplitudes& s, Complex k, double a);

// Point defect w0*delta(x) + 2*w1*delta'(x). w0 >= 0 keeps the spectrum free
// of negative-energy levels; w0 = w1 = 0 is the free line.
class DeltaPrimeDefect : public ScatteringModel {
 public:
  DeltaPrimeDefect(double w0, double w1);
  // Construct from the reduced couplings gamma = w0/(1+w1^2),
  // Omega = (w1^2-1)/(w1^2+1); used by parameter sweeps.
  static DeltaPrimeDefect from_reduced(double Omega, double gamma);

  double w0() const { return w0_; }
  double w1() const { return w1_; }
  double gamma() const { return gamma_; }
  double Omega() const { return Omega_; }

  ScatteringAmplitudes amplitudes(Complex k) const override;
  double support_width() const override { return 0.0; }
  Complex lattice_h(Complex k, double a) const override;
  Complex lattice_h_deriv(Complex k, double a) const override;
  MatsubaraAxisData matsubara_axis(double xi, double a) const override;
  double background_phase(double omega) const override;

 private:
  double w0_, w1_, gamma_, Omega_;
};

// Truncated Poschl-Teller well: V(x) = -2/cosh^2(x) for |x| <= eps/2.
class PoschlTellerDefect : public ScatteringModel {
 public:
  explicit PoschlTellerDefect(double eps);

  double eps() const { return eps_; }
  double Lambda() const { return Lambda_; }

  ScatteringAmplitudes amplitudes(Complex k) const override;
  double support_width() const override { return eps_; }
  Complex lattice_h(Complex k, double a) const override;
  Complex lattice_h_deriv(Complex k, double a) const override;
  MatsubaraAxisData matsubara_axis(double xi, double a) const override;
  double background_phase(double omega) const override;

 private:
  double eps_, tau_, Lambda_;
};

// Phase shift of the delta-delta' defect, branch fixed by delta(inf) = 0.
double phase_shift(const DeltaPrimeDefect& d, double k);
// d delta/dk; strictly positive for w0 > 0.
double phase_shift_derivative(const DeltaPrimeDefect& d, double k);

}  // namespace comb
