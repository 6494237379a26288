#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polycalc/fft.hpp"
#include "polycalc/opcalc.hpp"
#include "polycalc/transforms.hpp"

using namespace polycalc;

namespace {

GridPtr tgrid() {
  static GridPtr g = build_grid(1024, 40.0, QuadRule::gauss_laguerre_mapped);
  return g;
}

TestFn fn_exp() {
  return sample([](double t) { return std::exp(-t); }, tgrid(),
                DecayTag::exponential);
}

SpatialGridPtr sgrid(std::size_t m = 256) {
  return std::make_shared<SpatialGrid>(SpatialGrid{12.0, m});
}

}  // namespace

TEST_CASE("block indices") {
  CHECK(block_indices(1) == std::pair<long, long>{1, 1});
  CHECK(block_indices(2) == std::pair<long, long>{2, 3});
  CHECK(block_indices(3) == std::pair<long, long>{4, 6});
  CHECK(block_indices(0) == std::pair<long, long>{1, 0});
  CHECK_THROWS_AS(block_indices(-1), parameter_error);
  CHECK(Generator1D::second_derivative(2).block() == 2);
  CHECK(Generator1D::second_derivative(3).local_axis() == 1);
  CHECK(Generator1D::second_derivative(4).block() == 3);
}

TEST_CASE("fft roundtrip and parseval") {
  std::vector<cplx> v(64);
  for (std::size_t i = 0; i < v.size(); ++i)
    v[i] = cplx{std::sin(0.1 * i), std::cos(0.37 * i)};
  const std::vector<cplx> orig = v;
  double before = 0.0;
  for (const auto& z : v) before += std::norm(z);
  fft::transform(v, false);
  double after = 0.0;
  for (const auto& z : v) after += std::norm(z);
  CHECK(after / v.size() == doctest::Approx(before).epsilon(1e-12));
  fft::transform(v, true);
  double err = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    err = std::max(err, std::abs(v[i] - orig[i]));
  CHECK(err <= 1e-13);
  std::vector<cplx> bad(10);
  CHECK_THROWS_AS(fft::transform(bad, false), parameter_error);
}

TEST_CASE("scalar semigroup and marginal quadrature") {
  const auto A = Generator1D::scalar_gen(cplx{0.0, -1.0});  // e^{-t} I
  const FockState one = FockState::scalar(cplx{1.0, 0.0});
  // semigroup law
  const FockState ab = A.apply_semigroup(0.4, A.apply_semigroup(0.6, one));
  const FockState c = A.apply_semigroup(1.0, one);
  CHECK(std::abs(ab.y0 - c.y0) <= 1e-12);
  // marginal quadrature equals the Laplace value of the symbol
  const TestFn phi = fn_exp();
  const FockState got = marginal_apply(phi, A, one);
  const cplx want = laplace_eval(power_test(phi, 1), 1, {cplx{1.0, 0.0}});
  CHECK(std::abs(got.y0 - want) <= 1e-8);
  // linearity in the state
  const FockState z = marginal_apply(phi, A, FockState::scalar(cplx{0, 0}));
  CHECK(z.y0 == cplx{0.0, 0.0});
  const FockState s2 =
      marginal_apply(phi, A, FockState::scalar(cplx{2.0, 0.0}));
  CHECK(std::abs(s2.y0 - 2.0 * got.y0) <= 1e-14);
}

TEST_CASE("gaussian propagation matches the complex-variance closed form") {
  auto g = sgrid(512);
  FockState y = gaussian_state({g}, 1);
  for (double t : {0.1, 0.25, 0.5}) {
    const FockState got = gaussian_apply({t}, y);
    const cplx var{1.0, -2.0 * t};
    const cplx pref = 1.0 / std::sqrt(var);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < g->nodes; ++i) {
      const double xi = g->axis_node(i);
      const cplx want = pref * std::exp(-xi * xi / (2.0 * var));
      num += std::norm(got.comps[0][i] - want);
      den += std::norm(want);
    }
    CHECK(std::sqrt(num / den) <= 1e-6);
  }
}

TEST_CASE("gaussian semigroup: identity, law, unitarity, gates") {
  auto g = sgrid(512);
  const FockState y = gaussian_state({g}, 1);
  const FockState id = gaussian_apply({0.0}, y);
  CHECK(state_distance(id, y) == 0.0);
  const FockState ab = gaussian_apply({0.15}, gaussian_apply({0.1}, y));
  const FockState once = gaussian_apply({0.25}, y);
  CHECK(state_distance(ab, once) / norm(once) <= 1e-10);
  for (double t : {0.1, 0.5}) {
    const FockState w = gaussian_apply({t}, y);
    CHECK(std::abs(norm(w) - norm(y)) / norm(y) <= 1e-10);
  }
  CHECK_THROWS_AS(gaussian_apply({-0.1}, y), domain_error);
  CHECK_THROWS_AS(gaussian_apply({40.0}, y), resolution_error);
  CHECK_THROWS_AS(gaussian_apply({0.1, 0.1}, y), parameter_error);
}

TEST_CASE("calculus on a scalar-only symbol scales the state") {
  PolyTest p = PolyTest::zero(2);
  p.terms[0].push_back(TestTerm{cplx{2.5, -1.0}, {}});
  const GeneratorSystem A =
      GeneratorSystem::scalars({cplx{0, -1}, cplx{0, -1}, cplx{0, -1}});
  const FockState y = FockState::scalar(cplx{0.6, 0.4});
  const FockState out = calculus_apply(p, A, y);
  CHECK(std::abs(out.y0 - cplx{2.5, -1.0} * cplx{0.6, 0.4}) <= 1e-14);
}

TEST_CASE("all-scalar calculus equals the Laplace closed form") {
  const std::vector<cplx> lamp = {cplx{1.0, 0.0}, cplx{0.7, 0.2},
                                  cplx{1.3, -0.4}};
  std::vector<cplx> flat;
  for (const auto& l : lamp) flat.push_back(cplx{0.0, -1.0} * l);
  const GeneratorSystem A = GeneratorSystem::scalars(flat);
  const PolyTest p = power_test(fn_exp(), 2);
  const FockState got = calculus_apply(p, A, FockState::scalar({1.0, 0.0}));
  const cplx want = 1.0 + 1.0 / (lamp[0] + 1.0) +
                    1.0 / ((lamp[1] + 1.0) * (lamp[2] + 1.0));
  CHECK(std::abs(got.y0 - want) <= 1e-8);
}

TEST_CASE("degree-2 factorization equals brute tensor quadrature") {
  auto coarse = build_grid(16, 40.0, QuadRule::gauss_laguerre_mapped);
  const TestFn phi = sample([](double t) { return std::exp(-t); }, coarse,
                            DecayTag::exponential);
  auto g1 = sgrid(64);
  auto g2 = sgrid(32);
  const FockState y = gaussian_state({g1, g2}, 2);
  const GeneratorSystem A = GeneratorSystem::gaussian(2);
  const FockState got = lift(power_test(phi, 2)).degree_apply(2, A, y);
  FockState brute = FockState::zeros_like(y);
  for (std::size_t i = 0; i < coarse->size(); ++i) {
    const FockState si =
        A.blocks[1][0].apply_semigroup(coarse->nodes[i], y, false);
    for (std::size_t j = 0; j < coarse->size(); ++j) {
      const FockState sij =
          A.blocks[1][1].apply_semigroup(coarse->nodes[j], si, false);
      brute = axpy(coarse->weights[i] * coarse->weights[j] * phi.values[i] *
                       phi.values[j],
                   sij, brute);
    }
  }
  CHECK(state_distance(got, brute) / (1.0 + norm(brute)) <= 1e-6);
}

TEST_CASE("operator shift: s = 0 and the exponential closed form") {
  const std::vector<cplx> lamp = {cplx{1.0, 0.0}};
  const GeneratorSystem A = GeneratorSystem::scalars({cplx{0.0, -1.0}});
  const PolyTest p = power_test(fn_exp(), 1);
  const FockState one = FockState::scalar({1.0, 0.0});
  const FockState a = opshift_apply(p, 0.0, A, one);
  const FockState b = calculus_apply(p, A, one);
  CHECK(std::abs(a.y0 - b.y0) == 0.0);
  const FockState sh = opshift_apply(p, 0.5, A, one);
  const cplx want = 1.0 + std::exp(-0.5) / (lamp[0] + 1.0);
  CHECK(std::abs(sh.y0 - want) <= 1e-8);
}

TEST_CASE("phi: unit acts as the identity, homomorphism, diff property") {
  const GeneratorSystem A = GeneratorSystem::scalars(
      {cplx{0, -1}, cplx{0.2, -0.7}, cplx{-0.1, -1.3}});
  const FockState one = FockState::scalar({1.0, 0.0});
  const PolyTest p = power_test(fn_exp(), 2);

  const FockState u = phi_apply(boxtimes_unit(2), p, A, one);
  const FockState direct = calculus_apply(p, A, one);
  CHECK(std::abs(u.y0 - direct.y0) <= 1e-12);

  const PolyDist F = power_dist(delta_at(1.0), 2);
  const PolyDist G = power_dist(make_density(fn_exp()), 2);
  const FockState lhs = phi_apply(boxtimes(F, G), p, A, one);
  const FockState rhs = phi_apply(F, cross_corr_poly(G, p), A, one);
  CHECK(std::abs(lhs.y0 - rhs.y0) <= 1e-6 * (1.0 + std::abs(rhs.y0)));

  const TestFn t2e = sample([](double t) { return t * t * std::exp(-t); },
                            tgrid(), DecayTag::exponential);
  const PolyTest q = power_test(t2e, 2);
  const FockState dl = phi_apply(poly_derivative_dist(F), q, A, one);
  const FockState dr = phi_apply(F, poly_derivative_test(q), A, one);
  CHECK(std::abs(dl.y0 + dr.y0) <= 1e-4 * (1.0 + std::abs(dr.y0)));
}

TEST_CASE("phi commutes with the operator shift on a Fock state") {
  auto g1 = sgrid(128);
  auto g2 = sgrid(32);
  const FockState y = gaussian_state({g1, g2}, 2);
  const GeneratorSystem A = GeneratorSystem::gaussian(2);
  const PolyTest p = power_test(fn_exp(), 2);
  const PolyDist F = power_dist(delta_at(1.0), 2);
  const FockState lhs = phi_apply(F, poly_shift(p, 0.3), A, y);
  const FockState rhs = opshift_apply(cross_corr_poly(F, p), 0.3, A, y);
  CHECK(state_distance(lhs, rhs) / (1.0 + norm(rhs)) <= 1e-6);
}

TEST_CASE("contraction report") {
  const FockState one = FockState::scalar({1.0, 0.0});
  const auto ok = Generator1D::scalar_gen(cplx{0.0, -1.0});
  const auto rep = contraction_report(ok, {0.5, 1.0, 2.0}, {one});
  CHECK(rep.contractive());
  CHECK(rep.max_ratio <= 1.0);

  auto g = sgrid(128);
  const auto d2 = Generator1D::second_derivative(1);
  const auto rep2 = contraction_report(
      d2, {0.1, 1.0, 5.0}, {gaussian_state({g}, 1), random_state({g}, 1, 7)});
  CHECK(rep2.contractive());
  CHECK(std::abs(rep2.max_ratio - 1.0) <= 1e-10);

  const auto bad = Generator1D::scalar_gen(cplx{0.0, 0.5});
  const auto rep3 = contraction_report(bad, {1.0}, {one});
  CHECK(!rep3.violations.empty());
  CHECK(!rep3.contractive());
}

TEST_CASE("generator blocks commute on probe states") {
  auto g1 = sgrid(64);
  auto g2 = sgrid(32);
  const GeneratorSystem A = GeneratorSystem::gaussian(2);
  const FockState y = random_state({g1, g2}, 2, 99);
  CHECK(A.commutation_defect(y) / (1.0 + norm(y)) <= 1e-12);
}

TEST_CASE("fock states: symmetry, norms, arithmetic") {
  auto g1 = sgrid(64);
  auto g2 = sgrid(16);
  const FockState y = gaussian_state({g1, g2}, 2);
  CHECK(symmetry_defect(y) == 0.0);
  const FockState r = random_state({g1, g2}, 2, 5);
  CHECK(symmetry_defect(r) <= 1e-12);
  const FockState s = axpy(cplx{2.0, 0.0}, y, FockState::zeros_like(y));
  CHECK(norm(s) == doctest::Approx(2.0 * norm(y)).epsilon(1e-12));
  CHECK(state_distance(y, y) == 0.0);
}

TEST_CASE("configuration errors") {
  const GeneratorSystem A = GeneratorSystem::scalars({cplx{0, -1}});
  const PolyTest p = power_test(fn_exp(), 2);
  CHECK_THROWS_AS(calculus_apply(p, A, FockState::scalar({1, 0})),
                  config_error);
  CHECK_THROWS_AS(GeneratorSystem::scalars({cplx{0, -1}, cplx{0, -1}}),
                  parameter_error);
}
