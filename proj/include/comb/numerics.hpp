#pragma once

#include <functional>

namespace comb::num {

// Endpoint transforms for integrands with known singular structure.
//   SqrtEdgeLower/Upper: integrable 1/sqrt singularity at the given edge,
//     removed by the substitution x = edge +- s^2.
//   ExpTail: semi-infinite upper limit, integrand decaying like exp(-x/scale);
//     the upper limit is truncated from the requested absolute tolerance.
enum class Transform { None, SqrtEdgeLower, SqrtEdgeUpper, ExpTail };

struct QuadratureSpec {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  int max_panels = 4000;
  Transform transform = Transform::None;
  double tail_scale = 1.0;  // ExpTail decay scale
};

struct QuadratureResult {
  double value = 0.0;
  double err_estimate = 0.0;
  int panels = 0;
  // truncation bound for ExpTail (already included in err_estimate)
  double truncation_bound = 0.0;
};

// Globally adaptive Gauss-Kronrod (G7,K15). Deterministic subdivision order:
// the panel with the largest error estimate splits first, ties by position.
// Throws PanelsExhausted (with the partial sum) when max_panels is reached
// before |err| <= rel_tol*|value| + abs_tol.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    const QuadratureSpec& spec = {});

// ExpTail convenience: integrate f over [lo, inf) given the decay scale.
QuadratureResult integrate_exp_tail(const std::function<double(double)>& f,
                                    double lo, const QuadratureSpec& spec);

struct RootSpec {
  double tol_abs = 1e-13;
  int max_iter = 200;
};

// Brent's method on a bracketing interval. g(lo) and g(hi) must differ in
// sign; throws NoSignChange otherwise, MaxIterations on a stuck iteration.
double find_root_bracketed(const std::function<double(double)>& g,
                           double lo, double hi, const RootSpec& spec = {});

}  // namespace comb::num
