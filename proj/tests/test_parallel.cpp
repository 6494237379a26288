#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polycalc/kernels.hpp"
#include "polycalc/opcalc.hpp"
#include "polycalc/parallel.hpp"

using namespace polycalc;

namespace {

GridPtr grid() {
  static GridPtr g = build_grid(512, 40.0, QuadRule::gauss_laguerre_mapped);
  return g;
}

TestFn fn_exp() {
  return sample([](double t) { return std::exp(-t); }, grid(),
                DecayTag::exponential);
}

TestFn fn_t_exp() {
  return sample([](double t) { return t * std::exp(-t); }, grid(),
                DecayTag::exponential);
}

struct ThreadGuard {
  int saved;
  explicit ThreadGuard(int n) : saved(par::threads()) { par::set_threads(n); }
  ~ThreadGuard() { par::set_threads(saved); }
};

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("openmp kernels agree with the serial reference") {
  const TestFn rho = fn_t_exp();
  const TestFn phi = fn_exp();
  std::vector<double> xi(257);
  for (std::size_t k = 0; k < xi.size(); ++k) xi[k] = -16.0 + 0.125 * k;

  const auto corr_s = kernels::cross_correlate_density_serial(rho, 0.0, phi);
  const auto conv_s = kernels::density_convolve_serial(rho, phi);
  const auto tran_s = kernels::oscillatory_transform_serial(phi, xi);

  ThreadGuard guard(4);
  REQUIRE(par::enabled());
  const auto corr_p = kernels::cross_correlate_density(rho, 0.0, phi);
  const auto conv_p = kernels::density_convolve(rho, phi);
  const auto tran_p = kernels::oscillatory_transform(phi, xi);

  CHECK(max_abs_diff(corr_s, corr_p) <= 1e-12);
  CHECK(max_abs_diff(conv_s, conv_p) <= 1e-12);
  CHECK(max_abs_diff(tran_s, tran_p) <= 1e-12);
}

TEST_CASE("serial dispatch is bitwise reproducible") {
  ThreadGuard guard(1);
  const TestFn rho = fn_t_exp();
  const TestFn phi = fn_exp();
  const auto a = kernels::cross_correlate_density(rho, 0.0, phi);
  const auto b = kernels::cross_correlate_density(rho, 0.0, phi);
  CHECK(max_abs_diff(a, b) == 0.0);
  const auto ref = kernels::cross_correlate_density_serial(rho, 0.0, phi);
  CHECK(max_abs_diff(a, ref) == 0.0);
}

TEST_CASE("marginal quadrature: parallel path matches serial") {
  auto sg = std::make_shared<SpatialGrid>(SpatialGrid{12.0, 128});
  const FockState y = gaussian_state({sg}, 1);
  const auto A = Generator1D::second_derivative(1);
  const TestFn phi = fn_exp();

  FockState serial_out = y, par_out = y;
  {
    ThreadGuard guard(1);
    serial_out = marginal_apply(phi, A, y);
  }
  {
    ThreadGuard guard(4);
    par_out = marginal_apply(phi, A, y);
  }
  CHECK(state_distance(serial_out, par_out) <= 1e-12);
}

TEST_CASE("mode-reassociated marginal equals the literal orbit sum") {
  ThreadGuard guard(1);
  auto sg = std::make_shared<SpatialGrid>(SpatialGrid{12.0, 64});
  const FockState y = gaussian_state({sg}, 1);
  const auto A = Generator1D::second_derivative(1);
  auto coarse = build_grid(64, 40.0, QuadRule::gauss_laguerre_mapped);
  const TestFn phi = sample([](double t) { return std::exp(-t); }, coarse,
                            DecayTag::exponential);
  const FockState fast = marginal_apply(phi, A, y);
  FockState orbit = FockState::zeros_like(y);
  for (std::size_t i = 0; i < coarse->size(); ++i) {
    const FockState s = A.apply_semigroup(coarse->nodes[i], y, false);
    orbit = axpy(coarse->weights[i] * phi.values[i], s, orbit);
  }
  CHECK(state_distance(fast, orbit) / (1.0 + norm(orbit)) <= 1e-12);
}

TEST_CASE("POLYCALC_THREADS drives the dispatch") {
  ThreadGuard guard(1);
  CHECK(!par::enabled());
  par::set_threads(3);
  CHECK(par::enabled());
  CHECK(par::threads() == 3);
}
