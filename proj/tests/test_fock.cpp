#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polycalc/fock.hpp"

using namespace polycalc;

namespace {

GridPtr grid() {
  static GridPtr g = build_grid(1024, 40.0, QuadRule::gauss_laguerre_mapped);
  return g;
}

TestFn fn_exp() {
  return sample([](double t) { return std::exp(-t); }, grid(),
                DecayTag::exponential);
}

TestFn fn_t2exp() {
  return sample([](double t) { return t * t * std::exp(-t); }, grid(),
                DecayTag::exponential);
}

}  // namespace

TEST_CASE("power_test structure and evaluation") {
  const TestFn phi = fn_exp();
  const PolyTest p0 = power_test(phi, 0);
  REQUIRE(p0.terms.size() == 1);
  REQUIRE(p0.terms[0].size() == 1);
  CHECK(p0.terms[0][0].coeff == cplx{1.0, 0.0});
  CHECK(p0.terms[0][0].factors.empty());

  const PolyTest p2 = power_test(phi, 2);
  CHECK(p2.terms[1][0].factors.size() == 1);
  CHECK(p2.terms[2][0].factors.size() == 2);
  // degree-2 evaluation is the product phi(t1) phi(t2)
  const cplx v = eval_poly_test(p2, 2, {0.5, 1.25});
  CHECK(std::abs(v - std::exp(-0.5) * std::exp(-1.25)) <= 1e-9);
}

TEST_CASE("power_dist and the boxtimes unit") {
  const PolyDist u = boxtimes_unit(3);
  for (int n = 1; n <= 3; ++n) {
    REQUIRE(u.diag[n].size() == 1);
    CHECK(u.diag[n][0].base.atoms[0].location == 0.0);
  }
  const PolyDist F = power_dist(delta_at(0.4), 3);
  CHECK(F.diag[3][0].base.atoms[0].location == 0.4);
}

TEST_CASE("boxtimes: unit law and delta shift composition") {
  const Distribution f = make_density(fn_exp());
  const PolyDist F = power_dist(f, 3);
  const PolyDist FU = boxtimes(F, boxtimes_unit(3));
  for (int n = 0; n <= 3; ++n) {
    REQUIRE(FU.diag[n].size() == 1);
    CHECK(std::abs(FU.diag[n][0].coeff - cplx{1.0, 0.0}) == 0.0);
    if (n >= 1)
      CHECK(representation_distance(FU.diag[n][0].base, F.diag[n][0].base) ==
            0.0);
  }
  const PolyDist ab =
      boxtimes(power_dist(delta_at(0.25), 2), power_dist(delta_at(0.5), 2));
  const PolyDist want = power_dist(delta_at(0.75), 2);
  for (int n = 1; n <= 2; ++n)
    CHECK(representation_distance(ab.diag[n][0].base, want.diag[n][0].base) ==
          0.0);
}

TEST_CASE("boxtimes degree-1 slice agrees with convolve") {
  const Distribution f = delta_at(1.0);
  const Distribution g = make_density(fn_exp());
  const PolyDist FG = boxtimes(power_dist(f, 2), power_dist(g, 2));
  const Distribution direct = convolve(f, g);
  CHECK(representation_distance(FG.diag[1][0].base, direct) == 0.0);
}

TEST_CASE("boxtimes refuses derivation images") {
  const PolyDist F = power_dist(delta_at(1.0), 2);
  const PolyDist DF = poly_derivative_dist(F);
  CHECK_THROWS_AS(boxtimes(DF, boxtimes_unit(2)), capability_error);
}

TEST_CASE("cross_corr_poly: unit acts as the identity") {
  const PolyTest p = power_test(fn_t2exp(), 3);
  const PolyTest q = cross_corr_poly(boxtimes_unit(3), p);
  CHECK(poly_sup_distance(p, q) == 0.0);
}

TEST_CASE("cross_corr_poly on powers is the power of the correlate") {
  const Distribution f = delta_at(0.5);
  const TestFn phi = fn_exp();
  const PolyTest got = cross_corr_poly(power_dist(f, 2), power_test(phi, 2));
  const PolyTest want = power_test(cross_correlate(f, phi), 2);
  CHECK(poly_sup_distance(got, want) <= 1e-12);
}

TEST_CASE("graded homomorphism K_{F boxtimes G} == K_F K_G") {
  const Distribution f = delta_at(1.0);
  const Distribution g = make_density(fn_exp());
  const PolyDist F = power_dist(f, 2);
  const PolyDist G = power_dist(g, 2);
  const PolyTest p = power_test(fn_exp(), 2);
  const PolyTest lhs = cross_corr_poly(boxtimes(F, G), p);
  const PolyTest rhs = cross_corr_poly(F, cross_corr_poly(G, p));
  CHECK(poly_sup_distance(lhs, rhs) <= 1e-6);
}

TEST_CASE("poly_shift basics and commutant identity") {
  const TestFn phi = fn_exp();
  const PolyTest p = power_test(phi, 2);
  CHECK(poly_sup_distance(poly_shift(p, 0.0), p) == 0.0);
  const PolyTest a = poly_shift(p, 0.4);
  const PolyTest b = power_test(shift_fn(phi, 0.4), 2);
  CHECK(poly_sup_distance(a, b) == 0.0);

  const PolyDist F = power_dist(make_density(fn_exp()), 2);
  const PolyTest lhs = cross_corr_poly(F, poly_shift(p, 0.3));
  const PolyTest rhs = poly_shift(cross_corr_poly(F, p), 0.3);
  CHECK(poly_sup_distance(lhs, rhs) <= 1e-6);
}

TEST_CASE("graded derivation slices") {
  const TestFn phi = fn_exp();
  const PolyTest p = power_test(phi, 2);
  const PolyTest dp = poly_derivative_test(p);
  // degree 0 maps to zero
  CHECK(dp.terms[0].empty());
  // degree-1 slice is D phi
  REQUIRE(dp.terms[1].size() == 1);
  CHECK(sup_distance(dp.terms[1][0].factors[0], diff_fn(phi)) == 0.0);
  // degree-2 slice is 2 Sym(phi (x) D phi): one merged term, coefficient 2
  REQUIRE(dp.terms[2].size() == 1);
  CHECK(dp.terms[2][0].coeff == cplx{2.0, 0.0});
  const cplx v = eval_poly_test(dp, 2, {0.3, 0.9});
  const auto dphi = diff_fn(phi);
  const cplx want = value_at(phi, 0.3) * value_at(dphi, 0.9) +
                    value_at(dphi, 0.3) * value_at(phi, 0.9);
  CHECK(std::abs(v - want) <= 1e-12);
}

TEST_CASE("derivation anticommutes with cross-correlation") {
  // (D F) ⋆ p == - F ⋆ (D p) with f = delta_1, phi = t^2 e^{-t}
  const PolyDist F = power_dist(delta_at(1.0), 2);
  const PolyTest p = power_test(fn_t2exp(), 2);
  const PolyTest lhs = cross_corr_poly(poly_derivative_dist(F), p);
  const PolyTest rhs =
      poly_scale(cplx{-1.0, 0.0}, cross_corr_poly(F, poly_derivative_test(p)));
  CHECK(poly_sup_distance(lhs, rhs) <= 1e-4);
}

TEST_CASE("graded pairing") {
  const TestFn phi = fn_exp();
  const PolyTest p = power_test(phi, 2);
  // unit: sum_n of products of phi(0) = 1 + 1 + 1
  const cplx u = poly_pairing(boxtimes_unit(2), p);
  CHECK(std::abs(u - cplx{3.0, 0.0}) <= 1e-12);
  // degree-1 slice equals the plain pairing
  PolyTest p1 = PolyTest::zero(2);
  p1.terms[1].push_back(TestTerm{cplx{1.0, 0.0}, {phi}});
  const Distribution f = make_density(fn_exp());
  const cplx got = poly_pairing(power_dist(f, 2), p1);
  CHECK(std::abs(got - pairing(f, phi)) <= 1e-12);
}

TEST_CASE("graded pairing against a 2-D tensor quadrature oracle") {
  const TestFn phi = fn_exp();
  const TestFn psi = sample([](double t) { return t * std::exp(-t); }, grid(),
                            DecayTag::exponential);
  PolyTest p = PolyTest::zero(2);
  p.terms[2].push_back(TestTerm{cplx{1.0, 0.0}, {phi, psi}});
  canonicalize(p);
  const Distribution f = make_density(fn_exp());
  const cplx got = poly_pairing(power_dist(f, 2), p);
  const auto& g = *grid();
  cplx brute{0.0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) {
      const cplx sym = 0.5 * (phi.values[i] * psi.values[j] +
                              psi.values[i] * phi.values[j]);
      brute += g.weights[i] * g.weights[j] *
               std::exp(-g.nodes[i]) * std::exp(-g.nodes[j]) * sym;
    }
  CHECK(std::abs(got - brute) <= 1e-7);
}

TEST_CASE("canonical ordering merges duplicated terms") {
  const TestFn phi = fn_exp();
  PolyTest p = PolyTest::zero(1);
  p.terms[1].push_back(TestTerm{cplx{1.0, 0.0}, {phi}});
  p.terms[1].push_back(TestTerm{cplx{2.0, 0.0}, {phi}});
  canonicalize(p);
  REQUIRE(p.terms[1].size() == 1);
  CHECK(p.terms[1][0].coeff == cplx{3.0, 0.0});
}

TEST_CASE("degree-cap mismatches are rejected") {
  const PolyTest p = power_test(fn_exp(), 2);
  CHECK_THROWS_AS(cross_corr_poly(boxtimes_unit(3), p), parameter_error);
  CHECK_THROWS_AS(poly_pairing(boxtimes_unit(1), p), parameter_error);
}
