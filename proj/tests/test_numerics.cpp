#include <cmath>

#include <doctest.h>

#include "comb/errors.hpp"
#include "comb/numerics.hpp"

using namespace comb;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("quadrature: polynomial exactness on a constant") {
  num::QuadratureSpec qs;
  auto r = num::integrate_adaptive([](double) { return 2.5; }, 0.0, kPi, qs);
  CHECK(std::abs(r.value - 2.5 * kPi) < 1e-14);
}

TEST_CASE("quadrature: inverse square root via the edge transform") {
  num::QuadratureSpec qs;
  qs.transform = num::Transform::SqrtEdgeLower;
  qs.rel_tol = 1e-13;
  auto r = num::integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, qs);
  CHECK(std::abs(r.value - 2.0) < 1e-12);
}

TEST_CASE("quadrature: bosonic log integral over the half line") {
  num::QuadratureSpec qs;
  qs.rel_tol = 1e-12;
  qs.abs_tol = 1e-13;
  qs.tail_scale = 1.0;
  auto r = num::integrate_exp_tail(
      [](double x) { return x == 0.0 ? 0.0 : std::log1p(-std::exp(-x)); }, 0.0, qs);
  CHECK(std::abs(r.value + kPi * kPi / 6.0) < 1e-10);
}

TEST_CASE("quadrature: error estimates are conservative") {
  struct Case {
    std::function<double(double)> f;
    double lo, hi, exact;
  };
  const Case battery[] = {
      {[](double x) { return std::sin(x); }, 0.0, kPi, 2.0},
      {[](double x) { return std::exp(-x * x); }, -3.0, 3.0, 1.77241469651762260},
      {[](double x) { return 1.0 / (1.0 + x * x); }, 0.0, 1.0, kPi / 4.0},
  };
  for (const auto& c : battery) {
    num::QuadratureSpec qs;
    qs.rel_tol = 1e-9;
    auto r = num::integrate_adaptive(c.f, c.lo, c.hi, qs);
    CHECK(std::abs(r.value - c.exact) <= 2.0 * r.err_estimate + 1e-15);
  }
}

TEST_CASE("quadrature: determinism") {
  auto f = [](double x) { return std::cos(7.0 * x) * std::exp(-0.3 * x); };
  num::QuadratureSpec qs;
  qs.rel_tol = 1e-11;
  const double v1 = num::integrate_adaptive(f, 0.0, 20.0, qs).value;
  const double v2 = num::integrate_adaptive(f, 0.0, 20.0, qs).value;
  CHECK(v1 == v2);  // bit-identical
}

TEST_CASE("quadrature: panel exhaustion carries the partial result") {
  num::QuadratureSpec qs;
  qs.rel_tol = 1e-14;
  qs.abs_tol = 1e-300;
  qs.max_panels = 10;
  bool thrown = false;
  try {
    num::integrate_adaptive([](double x) { return std::log(x); }, 0.0, 1.0, qs);
  } catch (const PanelsExhausted& e) {
    thrown = true;
    CHECK(std::abs(e.partial_value + 1.0) < 0.2);  // partial sum near -1
    CHECK(e.err_estimate > 0.0);
  }
  CHECK(thrown);
}

TEST_CASE("roots: cosine on [1, 2]") {
  const double r = num::find_root_bracketed([](double x) { return std::cos(x); }, 1.0, 2.0);
  CHECK(std::abs(r - kPi / 2.0) < 1e-12);
}

TEST_CASE("roots: linear function converges immediately") {
  num::RootSpec rs;
  rs.max_iter = 4;
  const double r =
      num::find_root_bracketed([](double x) { return 3.0 * x - 1.2; }, 0.0, 1.0, rs);
  CHECK(std::abs(r - 0.4) < 1e-12);
}

TEST_CASE("roots: Kronig-Penney first lower edge matches a fine-grid scan") {
  // |cos w + 4 sin(w)/w| = 1 for the w0 = 8 comb; first edge where h - 1 = 0
  auto g = [](double w) { return std::cos(w) + 4.0 * std::sin(w) / w - 1.0; };
  double lo = 0.1, hi = 0.1;
  for (double w = 0.1; w < 10.0; w += 1e-5) {
    if (g(w) * g(w + 1e-5) < 0) {
      lo = w;
      hi = w + 1e-5;
      break;
    }
  }
  double a = lo, b = hi;
  for (int i = 0; i < 100; ++i) {
    const double m = 0.5 * (a + b);
    (g(a) * g(m) <= 0 ? b : a) = m;
  }
  const double oracle = 0.5 * (a + b);
  const double found = num::find_root_bracketed(g, lo - 0.05, hi + 0.05);
  CHECK(std::abs(found - oracle) < 1e-10);
}

TEST_CASE("roots: missing sign change is rejected") {
  CHECK_THROWS_AS(num::find_root_bracketed([](double x) { return x * x + 1.0; }, -1.0, 1.0),
                  NoSignChange);
}
