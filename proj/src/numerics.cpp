#include "comb/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

#include "comb/errors.hpp"

namespace comb::num {
namespace {

// Gauss 7 / Kronrod 15 nodes and weights (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEval {
  double kronrod;
  double err;
};

PanelEval gk15(const std::function<double(double)>& f, double lo, double hi) {
  const double c = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(c);
  double gauss = fc * kWg[3];
  double kron = fc * kWgk[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double fsum = f(c - dx) + f(c + dx);
    kron += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  // |K15 - G7| estimates the Gauss error, a conservative bound for Kronrod.
  return {kron, std::abs(kron - gauss)};
}

struct Panel {
  double err;
  double lo, hi;
  double value;
  bool operator<(const Panel& o) const {
    if (err != o.err) return err < o.err;
    return lo > o.lo;  // deterministic tie-break
  }
};

QuadratureResult adapt(const std::function<double(double)>& f, double lo, double hi,
                       const QuadratureSpec& spec) {
  QuadratureResult out;
  if (lo == hi) return out;
  std::priority_queue<Panel> q;
  auto first = gk15(f, lo, hi);
  q.push({first.err, lo, hi, first.kronrod});
  double total = first.kronrod;
  double toterr = first.err;
  int panels = 1;
  while (toterr > spec.rel_tol * std::abs(total) + spec.abs_tol) {
    if (panels >= spec.max_panels) {
      throw PanelsExhausted("adaptive quadrature: panel budget exhausted", total, toterr);
    }
    Panel p = q.top();
    q.pop();
    if (p.err == 0.0) break;  // nothing refinable left
    const double mid = 0.5 * (p.lo + p.hi);
    if (mid <= p.lo || mid >= p.hi) {
      // interval at machine resolution; keep its value, drop its error claim
      toterr -= p.err;
      p.err = 0.0;
      q.push(p);
      continue;
    }
    auto left = gk15(f, p.lo, mid);
    auto right = gk15(f, mid, p.hi);
    total += left.kronrod + right.kronrod - p.value;
    toterr += left.err + right.err - p.err;
    q.push({left.err, p.lo, mid, left.kronrod});
    q.push({right.err, mid, p.hi, right.kronrod});
    ++panels;
  }
  out.value = total;
  out.err_estimate = toterr;
  out.panels = panels;
  return out;
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double lo, double hi, const QuadratureSpec& spec) {
  switch (spec.transform) {
    case Transform::None:
      return adapt(f, lo, hi, spec);
    case Transform::SqrtEdgeLower: {
      // x = lo + s^2
      auto g = [&](double s) { return 2.0 * s * f(lo + s * s); };
      return adapt(g, 0.0, std::sqrt(hi - lo), spec);
    }
    case Transform::SqrtEdgeUpper: {
      // x = hi - s^2
      auto g = [&](double s) { return 2.0 * s * f(hi - s * s); };
      return adapt(g, 0.0, std::sqrt(hi - lo), spec);
    }
    case Transform::ExpTail:
      return integrate_exp_tail(f, lo, spec);
  }
  throw Error("integrate_adaptive: unknown transform");
}

QuadratureResult integrate_exp_tail(const std::function<double(double)>& f,
                                    double lo, const QuadratureSpec& spec) {
  const double scale = spec.tail_scale > 0 ? spec.tail_scale : 1.0;
  const double cut = lo + scale * (std::log(1.0 / std::max(spec.abs_tol, 1e-300)) + 5.0);
  QuadratureSpec inner = spec;
  inner.transform = Transform::None;
  QuadratureResult r = adapt(f, lo, cut, inner);
  // tail bound: |f(cut)| * scale for an exp(-x/scale) tail
  r.truncation_bound = std::abs(f(cut)) * scale;
  r.err_estimate += r.truncation_bound;
  return r;
}

double find_root_bracketed(const std::function<double(double)>& g, double lo, double hi,
                           const RootSpec& spec) {
  double a = lo, b = hi;
  double fa = g(a), fb = g(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0) == (fb > 0)) {
    throw NoSignChange("find_root_bracketed: g(lo) and g(hi) have the same sign");
  }
  if (std::abs(fa) < std::abs(fb)) {
    std::swap(a, b);
    std::swap(fa, fb);
  }
  double c = a, fc = fa, d = b - a, e = d;
  for (int it = 0; it < spec.max_iter; ++it) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * 2.220446049250313e-16 * std::abs(b) + 0.5 * spec.tol_abs;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) return b;
    if (std::abs(e) < tol || std::abs(fa) <= std::abs(fb)) {
      d = e = m;  // bisection
    } else {
      double p, qq;
      const double s = fb / fa;
      if (a == c) {  // secant
        p = 2.0 * m * s;
        qq = 1.0 - s;
      } else {  // inverse quadratic
        const double q0 = fa / fc, r0 = fb / fc;
        p = s * (2.0 * m * q0 * (q0 - r0) - (b - a) * (r0 - 1.0));
        qq = (q0 - 1.0) * (r0 - 1.0) * (s - 1.0);
      }
      if (p > 0) qq = -qq;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * m * qq - std::abs(tol * qq), std::abs(e * qq))) {
        e = d;
        d = p / qq;
      } else {
        d = e = m;
      }
    }
    a = b;
    fa = fb;
    b += (std::abs(d) > tol) ? d : (m > 0 ? tol : -tol);
    fb = g(b);
  }
  throw MaxIterations("find_root_bracketed: iteration budget exceeded");
}

}  // namespace comb::num
