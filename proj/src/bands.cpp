#include "comb/bands.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "comb/errors.hpp"
#include "comb/numerics.hpp"

namespace comb {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kEdgeWindow = 1e-9;
constexpr double kDegenerateTol = 1e-12;

double h_real(const CombSpec& c, double w) { return c.h(Complex(w, 0)).real(); }
double hp_real(const CombSpec& c, double w) { return c.h_deriv(Complex(w, 0)).real(); }
}  // namespace

CombSpec::CombSpec(ModelPtr model, double spacing) : model_(std::move(model)), spacing_(spacing) {
  if (spacing_ <= 0.0) throw Error("CombSpec: lattice spacing must be positive");
  if (model_->support_width() > spacing_)
    throw Error("CombSpec: defect support exceeds the lattice spacing");
}

Complex secular(const CombSpec& comb, double theta, Complex k) {
  return std::cos(theta) - comb.h(k);
}

namespace {

// Collect every solution of h = +1 or h = -1 in (0, omega_cut], including
// tangencies (degenerate gaps), by scanning h and h' and refining extrema.
std::vector<double> collect_edges(const CombSpec& comb, double omega_cut, double step) {
  std::set<double> edges;
  num::RootSpec rs;
  rs.tol_abs = 1e-13;

  const int n = static_cast<int>(std::ceil(omega_cut / step)) + 1;
  std::vector<double> w(n), hv(n), hpv(n);
  for (int i = 0; i < n; ++i) {
    w[i] = std::min(i * step, omega_cut);
    const double x = (w[i] == 0.0) ? 1e-300 : w[i];
    hv[i] = h_real(comb, x);
    hpv[i] = (w[i] == 0.0) ? 0.0 : hp_real(comb, x);
  }

  auto refine_edge = [&](double lo, double hi, double level) {
    auto g = [&](double x) { return h_real(comb, x) - level; };
    if (g(lo) * g(hi) < 0) edges.insert(num::find_root_bracketed(g, lo, hi, rs));
  };

  for (int i = 0; i + 1 < n; ++i) {
    for (double level : {1.0, -1.0}) {
      const double gi = hv[i] - level, gj = hv[i + 1] - level;
      if (gi == 0.0) edges.insert(w[i]);
      if (gi * gj < 0) refine_edge(std::max(w[i], 1e-300), w[i + 1], level);
    }
    // extremum inside the cell: may hide a narrow gap or a tangency
    if (i > 0 && hpv[i] * hpv[i + 1] < 0) {
      auto gp = [&](double x) { return hp_real(comb, x); };
      const double wext = num::find_root_bracketed(gp, w[i], w[i + 1], rs);
      const double hext = h_real(comb, wext);
      if (std::abs(std::abs(hext) - 1.0) <= kDegenerateTol) {
        edges.insert(wext);  // degenerate (touching) edge
      } else if (std::abs(hext) > 1.0) {
        const double level = hext > 0 ? 1.0 : -1.0;
        refine_edge(std::max(w[i] - step, 1e-300), wext, level);
        refine_edge(wext, std::min(w[i + 1] + step, omega_cut), level);
      }
    }
  }
  return {edges.begin(), edges.end()};
}

// Monotonicity check of theta over a candidate band; a hidden gap shows up
// as a fold in theta(omega).
bool band_is_clean(const CombSpec& comb, double lo, double hi) {
  const double pad = 1e-7 * (hi - lo);
  double prev = std::acos(std::clamp(h_real(comb, std::max(lo + pad, 1e-300)), -1.0, 1.0));
  const bool up = std::acos(std::clamp(h_real(comb, hi - pad), -1.0, 1.0)) > prev;
  for (int i = 1; i <= 64; ++i) {
    const double x = lo + pad + (hi - lo - 2 * pad) * i / 64.0;
    const double th = std::acos(std::clamp(h_real(comb, x), -1.0, 1.0));
    if (up ? th < prev - 1e-9 : th > prev + 1e-9) return false;
    prev = th;
  }
  return true;
}

}  // namespace

std::vector<Band> band_edges(const CombSpec& comb, double omega_cut, int max_bands) {
  if (omega_cut <= 0.0) throw Error("band_edges: omega_cut must be positive");
  double step = kPi / (64.0 * comb.spacing());
  for (int attempt = 0; attempt < 5; ++attempt, step /= 4.0) {
    std::vector<double> edges = collect_edges(comb, omega_cut, step);
    std::vector<double> pts;
    pts.push_back(0.0);
    pts.insert(pts.end(), edges.begin(), edges.end());
    pts.push_back(omega_cut);

    std::vector<Band> bands;
    bool dirty = false;
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
      const double lo = pts[i], hi = pts[i + 1];
      if (hi - lo < 1e-13) continue;
      const double mid = 0.5 * (lo + hi);
      if (std::abs(h_real(comb, std::max(mid, 1e-300))) >= 1.0) continue;
      if (!band_is_clean(comb, lo, hi)) {
        dirty = true;
        break;
      }
      Band b;
      b.index = static_cast<int>(bands.size()) + 1;
      b.omega_min = lo;
      b.omega_max = hi;
      const double h_lo = h_real(comb, std::max(lo, 1e-300));
      b.theta_at_min = std::acos(std::clamp(h_lo, -1.0, 1.0));
      bands.push_back(b);
      if (static_cast<int>(bands.size()) >= max_bands) break;
    }
    if (!dirty) return bands;
  }
  throw ScanResolutionExceeded("band_edges: unresolved band structure at the finest scan step");
}

std::optional<double> dispersion_theta(const CombSpec& comb, double omega) {
  if (omega <= 0.0) throw Error("dispersion_theta: omega must be positive");
  const double h = h_real(comb, omega);
  if (std::abs(h) > 1.0) return std::nullopt;
  return std::acos(h);
}

double density_of_states(const CombSpec& comb, double omega) {
  if (omega <= 0.0) throw Error("density_of_states: omega must be positive");
  const double h = h_real(comb, omega);
  const double s2 = (1.0 - h) * (1.0 + h);
  if (s2 <= 0.0) return 0.0;  // gap
  const double hp = hp_real(comb, omega);
  if (std::abs(hp) > 0.0) {
    // distance to the nearest edge, estimated from 1 - h^2 ~ 2 |h'| * dist
    const double dist = s2 / (2.0 * std::abs(hp));
    if (dist < kEdgeWindow)
      throw EdgeSingularity("density_of_states: omega within the edge exclusion window");
  }
  return std::abs(hp) / (kPi * std::sqrt(s2));
}

}  // namespace comb
