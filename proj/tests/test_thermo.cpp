#include <cmath>
#include <memory>

#include <doctest.h>

#include "comb/errors.hpp"
#include "comb/oracle.hpp"
#include "comb/thermo.hpp"

using namespace comb;

namespace {
constexpr double kPi = 3.14159265358979323846;

CombSpec free_comb() { return CombSpec(std::make_shared<DeltaPrimeDefect>(0.0, 0.0), 1.0); }
CombSpec dd_comb() { return CombSpec(std::make_shared<DeltaPrimeDefect>(3.0, 2.0), 1.0); }
CombSpec kp_comb() { return CombSpec(std::make_shared<DeltaPrimeDefect>(8.0, 0.0), 1.0); }
CombSpec pt_comb(double eps = 0.5) {
  return CombSpec(std::make_shared<PoschlTellerDefect>(eps), 1.0);
}

ThermoRequest request(const CombSpec& c, double T, double alpha = kPi / 4) {
  ThermoRequest r{c};
  r.temperature = T;
  r.alpha = alpha;
  r.tol.rel_tol = 1e-10;
  r.tol.abs_tol = 1e-12;
  return r;
}

// A free-line model decorated with one artificial bound state; exercises the
// massive-field bound-state plumbing.
class BoundStateProbe : public DeltaPrimeDefect {
 public:
  BoundStateProbe() : DeltaPrimeDefect(0.0, 0.0) {}
  std::vector<BoundState> bound_states() const override { return {{0.5}}; }
};
}  // namespace

TEST_CASE("boltzmann factor: values, limits, sign") {
  CHECK(boltzmann(Complex(1.0, 0), 1.0).real()
        == doctest::Approx(-0.45867514538708193).epsilon(1e-14));
  CHECK(std::abs(boltzmann(Complex(1.0, 0), 1e-4).real()) < 1e-300 + 1e-30);
  for (double w : {0.2, 1.0, 6.0}) {
    CHECK(boltzmann(Complex(w, 0), 0.7).real() < 0.0);
  }
  CHECK_THROWS_AS(boltzmann(Complex(0.0, 0.0), 1.0), BranchPoint);
}

TEST_CASE("boltzmann dT: matches finite differences in T") {
  const Complex w(0.8, 0.3);
  const double T = 1.3, h = 1e-6;
  const Complex fd = (boltzmann(w, T + h) - boltzmann(w, T - h)) / (2.0 * h);
  CHECK(std::abs(boltzmann_dT(w, T) - fd) < 1e-8);
}

TEST_CASE("rotated: free comb blackbody anchor") {
  const double v = delta_f_rotated(request(free_comb(), 1.0)).value;
  CHECK(v == doctest::Approx(-kPi / 6.0).epsilon(1e-8));
}

TEST_CASE("rotated integrand: vanishes at large xi") {
  const CombSpec c = dd_comb();
  CHECK(std::abs(rotated_integrand(c, 80.0, kPi / 4, 1.0)) < 1e-20);
}

TEST_CASE("rotated integrand: equals the explicit two-ray form") {
  // both rays evaluated independently, no Schwarz shortcut
  const CombSpec c = dd_comb();
  const double alpha = kPi / 4, T = 1.0;
  for (double xi : {0.3, 1.0, 2.7, 6.0}) {
    const Complex I(0, 1);
    auto dv = [&](double sgn) {
      const Complex ray = std::polar(1.0, sgn * alpha);
      const Complex k = xi * ray;
      const Complex h = c.h(k);
      const Complex w = 1.0 - 1.0 / (h * h);
      return -ray * c.h_deriv(k) / (h * std::sqrt(w));
    };
    const Complex two_ray = (-boltzmann(xi * std::polar(1.0, alpha), T) * dv(+1.0)
                             + boltzmann(xi * std::polar(1.0, -alpha), T) * dv(-1.0))
                            / (2.0 * kPi * I);
    CHECK(std::abs(two_ray.imag()) < 1e-14);  // the pairing is real
    CHECK(rotated_integrand(c, xi, alpha, T)
          == doctest::Approx(-two_ray.real()).epsilon(1e-12));
  }
}

TEST_CASE("rotated: alpha independence") {
  for (const CombSpec& c : {dd_comb(), pt_comb()}) {
    const double v6 = delta_f_rotated(request(c, 1.0, kPi / 6)).value;
    const double v4 = delta_f_rotated(request(c, 1.0, kPi / 4)).value;
    const double v3 = delta_f_rotated(request(c, 1.0, kPi / 3)).value;
    CHECK(std::abs(v6 - v4) < 1e-8 * std::abs(v4));
    CHECK(std::abs(v3 - v4) < 1e-8 * std::abs(v4));
  }
}

TEST_CASE("rotated: alpha guard rails") {
  CHECK_THROWS_AS(delta_f_rotated(request(dd_comb(), 1.0, 0.01)), AlphaTooClose);
  CHECK_THROWS_AS(delta_f_rotated(request(dd_comb(), 1.0, kPi / 2 - 0.01)), AlphaTooClose);
}

TEST_CASE("real axis matches rotated on both example combs") {
  for (const CombSpec& c : {dd_comb(), pt_comb()}) {
    for (double T : {0.5, 1.0, 5.0}) {
      ThermoRequest r = request(c, T);
      const double ra = delta_f_real_axis(r).value;
      const double ro = delta_f_rotated(r).value;
      CHECK(std::abs(ra - ro) < 1e-6 * std::abs(ro));
    }
  }
}

TEST_CASE("free energy is negative and deepens with temperature") {
  const CombSpec c = CombSpec(std::make_shared<DeltaPrimeDefect>(0.1, 5.0), 1.0);
  const double f1 = delta_f_rotated(request(c, 1.0)).value;
  const double f5 = delta_f_rotated(request(c, 5.0)).value;
  CHECK(f1 < 0.0);
  CHECK(f5 < f1);
}

TEST_CASE("low temperature limit of the real-axis sum") {
  const double v = delta_f_real_axis(request(dd_comb(), 1e-4)).value;
  CHECK(std::abs(v) < 1e-30);
}

TEST_CASE("box oracle agreement at T = 1") {
  for (const CombSpec& c : {dd_comb(), pt_comb()}) {
    const double bx = oracle::delta_f_bruteforce(c, 1.0, 200, 40.0);
    const double ro = delta_f_rotated(request(c, 1.0)).value;
    CHECK(std::abs(bx - ro) < 1e-4 * std::abs(ro));
  }
}

TEST_CASE("real axis: user cutoff below tolerance reach is rejected") {
  ThermoRequest r = request(dd_comb(), 1.0);
  r.cutoff = 3.0;
  CHECK_THROWS_AS(delta_f_real_axis(r), TruncationUnreachable);
}

// --- Matsubara ---------------------------------------------------------------

TEST_CASE("matsubara: free comb subtracts to machine zero") {
  const double v = free_energy_matsubara(request(free_comb(), 1.0)).value;
  CHECK(std::abs(v) < 1e-12);
  CHECK(std::abs(vacuum_energy(free_comb()).value) < 1e-12);
}

TEST_CASE("matsubara: spliced identity against the rotated representation") {
  // F_sub - E0_sub - C(T) = Delta_T F, with C(T) the thermal content of the
  // zero-free subtraction background (carried in the diagnostics)
  for (const CombSpec& c : {dd_comb(), kp_comb()}) {
    const double e0 = vacuum_energy(c, {1e-10, 1e-12}).value;
    for (double T : {0.5, 1.0, 5.0}) {
      ThermoRequest r = request(c, T);
      const ThermoResult f = free_energy_matsubara(r);
      const double ro = delta_f_rotated(r).value;
      const double resid = f.value - e0 - f.diag.background_thermal_term - ro;
      CHECK(std::abs(resid) < 2e-8 * std::max(1.0, std::abs(ro)));
    }
  }
}

TEST_CASE("matsubara: vacuum energy is the zero-temperature limit") {
  const CombSpec c = dd_comb();
  const double e0 = vacuum_energy(c, {1e-10, 1e-12}).value;
  auto F = [&](double T) { return free_energy_matsubara(request(c, T)).value; };
  const double f1 = F(0.1), f2 = F(0.05), f3 = F(0.025);
  const double r1 = (4.0 * f2 - f1) / 3.0, r2 = (4.0 * f3 - f2) / 3.0;
  const double extrap = (16.0 * r2 - r1) / 15.0;
  CHECK(std::abs(extrap - e0) < 1e-4);
}

TEST_CASE("matsubara: repulsive delta comb has positive subtracted vacuum energy") {
  CHECK(vacuum_energy(kp_comb()).value > 0.0);
}

TEST_CASE("matsubara: Poschl-Teller axis data stays usable through xi = 1") {
  // the comb's h(i xi) crosses +1 around xi ~ 1; the subtracted sum must stay
  // finite and the vacuum integral must converge
  const ThermoResult f = free_energy_matsubara(request(pt_comb(), 1.0));
  CHECK(std::isfinite(f.value));
  CHECK(std::isfinite(vacuum_energy(pt_comb()).value));
}

// --- entropy -----------------------------------------------------------------

TEST_CASE("entropy: analytic integrand against finite differences") {
  for (const CombSpec& c : {dd_comb(), pt_comb()}) {
    for (int i = 0; i < 10; ++i) {
      const double T = 0.3 + 0.47 * i;
      const double S = entropy(request(c, T)).value;
      const double h = std::max(1e-3 * T, 1e-6);
      const double fd = -(delta_f_rotated(request(c, T + h)).value
                          - delta_f_rotated(request(c, T - h)).value) / (2.0 * h);
      CHECK(std::abs(S - fd) < std::max(1e-5 * std::abs(S), 1e-7));
    }
  }
}

TEST_CASE("entropy: positive for the delta-delta' combs") {
  for (auto [w0, w1] : {std::pair{0.1, 5.0}, {8.0, 0.0}, {3.0, 2.0}}) {
    const CombSpec c(std::make_shared<DeltaPrimeDefect>(w0, w1), 1.0);
    for (double T : {0.1, 0.5, 1.0, 2.5, 5.0}) {
      CHECK(entropy(request(c, T)).value > 0.0);
    }
  }
}

TEST_CASE("entropy: spectral positivity holds for the Poschl-Teller comb too") {
  // a positive-measure mode sum has positive entropy pointwise in T; the
  // truncated well's negative-energy band is outside the massless spectrum
  for (double eps : {0.1, 0.5, 1.0}) {
    const CombSpec c = pt_comb(eps);
    for (double T : {0.05, 0.2, 0.5, 1.0}) {
      CHECK(entropy(request(c, T)).value > 0.0);
    }
  }
}

// --- single defect -----------------------------------------------------------

TEST_CASE("single defect: both integral routes coincide") {
  const DeltaPrimeDefect d(2.0, 0.0);
  const double T = 1.0;
  const ThermoResult f = delta_f_single_defect(d, T, {1e-11, 1e-13});
  // independent route: quadrature of the closed-form integrand written out
  double direct = 0.0;
  const int n = 2000000;
  const double cut = 40.0;
  for (int i = 0; i < n; ++i) {
    const double k = cut * (i + 0.5) / n;
    direct += 2.0 * d.w0() * (1.0 + d.w1() * d.w1())
              * std::log1p(-std::exp(-k / T))
              / (d.w0() * d.w0() + 4.0 * k * k * std::pow(1.0 + d.w1() * d.w1(), 2))
              * cut / n;
  }
  direct *= T / kPi;
  CHECK(f.value == doctest::Approx(direct).epsilon(1e-8));
}

TEST_CASE("single defect: free energy depends only on gamma") {
  const double f1 = delta_f_single_defect(DeltaPrimeDefect(2.0, 0.0), 1.0).value;
  const double f2 = delta_f_single_defect(DeltaPrimeDefect(10.0, 2.0), 1.0).value;
  CHECK(f1 == doctest::Approx(f2).epsilon(1e-12));  // both have gamma = 2
}

TEST_CASE("single defect: low-temperature limits vanish") {
  const DeltaPrimeDefect d(2.0, 0.0);
  CHECK(std::abs(delta_f_single_defect(d, 1e-5).value) < 1e-8);
  CHECK(std::abs(entropy_single_defect(d, 1e-5).value) < 1e-4);
}

TEST_CASE("single defect: entropy positive and consistent with -dF/dT") {
  for (auto [w0, w1] : {std::pair{0.01, 2.0}, {3.0, 2.0}, {2.0, 0.0}}) {
    const DeltaPrimeDefect d(w0, w1);
    for (double T : {0.1, 0.6, 1.7, 5.0}) {
      const double S = entropy_single_defect(d, T, {1e-11, 1e-13}).value;
      CHECK(S > 0.0);
      const double h = 1e-4 * T;
      const double fd = -(delta_f_single_defect(d, T + h, {1e-11, 1e-13}).value
                          - delta_f_single_defect(d, T - h, {1e-11, 1e-13}).value)
                        / (2.0 * h);
      CHECK(std::abs(S - fd) < 1e-6 * std::max(1.0, std::abs(S)));
    }
  }
}

// --- massive field -----------------------------------------------------------

TEST_CASE("massive: reduces to the massless result as m -> 0") {
  ThermoRequest r = request(dd_comb(), 1.0);
  r.mass = 1e-8;
  const double vm = delta_f_massive(r).value;
  const double v0 = delta_f_rotated(request(dd_comb(), 1.0)).value;
  CHECK(std::abs(vm - v0) < 1e-6 * std::abs(v0));
}

TEST_CASE("massive: bound-state Boltzmann term") {
  const CombSpec probe(std::make_shared<BoundStateProbe>(), 1.0);
  ThermoRequest r = request(probe, 1.0);
  r.mass = 1.0;
  ThermoRequest rf = request(free_comb(), 1.0);
  rf.mass = 1.0;
  const double bound = delta_f_massive(r).value - delta_f_massive(rf).value;
  // T log(1 - e^{-sqrt(1 - 0.25)}) at T = 1
  CHECK(bound == doctest::Approx(-0.545796757679002).epsilon(1e-10));
}

TEST_CASE("massive: the gap suppresses thermal occupation monotonically") {
  const CombSpec c = dd_comb();
  double prev = -1e9;
  for (double m : {0.0, 0.5, 1.0, 2.0}) {
    ThermoRequest r = request(c, 1.0);
    r.mass = m;
    const double v = (m == 0.0) ? delta_f_rotated(r).value : delta_f_massive(r).value;
    CHECK(v >= prev);  // |Delta F| shrinks with the mass gap
    CHECK(v <= 0.0);
    prev = v;
  }
}

TEST_CASE("massive: bound state above the mass is rejected") {
  const CombSpec probe(std::make_shared<BoundStateProbe>(), 1.0);
  ThermoRequest r = request(probe, 1.0);
  r.mass = 0.3;  // below kappa = 0.5
  CHECK_THROWS_AS(delta_f_massive(r), UnstableSpectrum);
}

TEST_CASE("tolerance floor is enforced") {
  ThermoRequest r = request(dd_comb(), 1.0);
  r.tol.rel_tol = 1e-13;
  CHECK_THROWS_AS(delta_f_rotated(r), Error);
}
