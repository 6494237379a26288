#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polycalc/grid.hpp"
#include "polycalc/testfn.hpp"

using namespace polycalc;

TEST_CASE("trapezoid grid: nodes and weights") {
  auto g = build_grid(5, 1.0, QuadRule::trapezoid);
  REQUIRE(g->size() == 5);
  const double want_nodes[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int i = 0; i < 5; ++i) CHECK(g->nodes[i] == doctest::Approx(want_nodes[i]));
  CHECK(g->weights[0] == doctest::Approx(0.125));
  CHECK(g->weights[1] == doctest::Approx(0.25));
  CHECK(g->weights[2] == doctest::Approx(0.25));
  CHECK(g->weights[3] == doctest::Approx(0.25));
  CHECK(g->weights[4] == doctest::Approx(0.125));
}

TEST_CASE("trapezoid weights sum to the interval length") {
  auto g = build_grid(8, 1.0, QuadRule::trapezoid);
  double s = 0.0;
  for (double w : g->weights) s += w;
  CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("mapped rule integrates e^-t over the half-line") {
  auto g = build_grid(64, 20.0, QuadRule::gauss_laguerre_mapped);
  double re = 0.0;
  for (std::size_t i = 0; i < g->size(); ++i)
    re += g->weights[i] * std::exp(-g->nodes[i]);
  CHECK(std::abs(re - 1.0) <= 1e-10);
}

TEST_CASE("grid invariants") {
  for (auto rule : {QuadRule::trapezoid, QuadRule::gauss_laguerre_mapped}) {
    auto g = build_grid(128, 20.0, rule);
    CHECK(g->nodes.front() == 0.0);
    CHECK(g->nodes.back() <= 20.0 + 1e-12);
    for (std::size_t i = 0; i + 1 < g->size(); ++i)
      CHECK(g->nodes[i] < g->nodes[i + 1]);
    for (double w : g->weights) CHECK(w > 0.0);
    CHECK(g->size() == g->weights.size());
  }
  // trapezoid weight total is exactly t_max; the half-line rule carries the
  // tail mass beyond t_max, so its total exceeds it.
  auto trap = build_grid(128, 20.0, QuadRule::trapezoid);
  double s = 0.0;
  for (double w : trap->weights) s += w;
  CHECK(s == doctest::Approx(20.0).epsilon(1e-13));
  auto mapped = build_grid(128, 20.0, QuadRule::gauss_laguerre_mapped);
  s = 0.0;
  for (double w : mapped->weights) s += w;
  CHECK(s >= 20.0);
  CHECK(s <= 3.0 * 20.0);
}

TEST_CASE("grid parameter errors") {
  CHECK_THROWS_AS(build_grid(3, 1.0, QuadRule::trapezoid), parameter_error);
  CHECK_THROWS_AS(build_grid(7, 1.0, QuadRule::gauss_laguerre_mapped),
                  parameter_error);
  CHECK_THROWS_AS(build_grid(16, 0.0, QuadRule::trapezoid), parameter_error);
  CHECK_THROWS_AS(build_grid(16, -2.0, QuadRule::gauss_laguerre_mapped),
                  parameter_error);
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre_01(12, x, w);
  double val = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
    val += w[i] * (x[i] * x[i] * x[i] - 2.0 * x[i] + 1.0);
  CHECK(val == doctest::Approx(0.25 - 1.0 + 1.0).epsilon(1e-14));
}

TEST_CASE("mapped sub-rule integrates a decaying product") {
  std::vector<double> t, w;
  mapped_subrule(5.0, 3.0, 64, t, w);
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    re += w[i] * std::exp(-t[i]);
    im += w[i] * t[i];
  }
  CHECK(re == doctest::Approx(1.0 - std::exp(-5.0)).epsilon(1e-12));
  CHECK(im == doctest::Approx(12.5).epsilon(1e-12));
}
