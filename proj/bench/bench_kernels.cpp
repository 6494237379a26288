// Timing comparison of the serial reference kernels against the OpenMP
// paths. Run with POLYCALC_THREADS=<n>; thread count 1 exercises the serial
// implementations only.

#include <chrono>
#include <cmath>
#include <cstdio>

#include "polycalc/kernels.hpp"
#include "polycalc/opcalc.hpp"
#include "polycalc/parallel.hpp"
#include "polycalc/transforms.hpp"

using namespace polycalc;

namespace {

using clock_t_ = std::chrono::steady_clock;

template <typename Fn>
double time_ms(Fn&& fn, int reps) {
  const auto t0 = clock_t_::now();
  for (int r = 0; r < reps; ++r) fn();
  const auto t1 = clock_t_::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

}  // namespace

int main() {
  auto grid = build_grid(1024, 40.0, QuadRule::gauss_laguerre_mapped);
  const TestFn phi = sample([](double t) { return std::exp(-t); }, grid,
                            DecayTag::exponential);
  const TestFn rho = sample([](double t) { return t * std::exp(-t); }, grid,
                            DecayTag::exponential);
  std::vector<double> xi(513);
  for (std::size_t k = 0; k < xi.size(); ++k) xi[k] = -16.0 + 0.0625 * k;

  auto g1 = std::make_shared<SpatialGrid>(SpatialGrid{12.0, 512});
  auto g2 = std::make_shared<SpatialGrid>(SpatialGrid{12.0, 64});
  const FockState y2 = gaussian_state({g1, g2}, 2);
  const auto A22 = Generator1D::second_derivative(2);

  struct Row {
    const char* name;
    double serial_ms;
    double par_ms;
  };
  std::vector<Row> rows;

  const int kthreads = par::threads();
  std::printf("polycalc kernel benchmark (POLYCALC_THREADS=%d)\n\n", kthreads);

  {
    auto serial = [&] { kernels::cross_correlate_density_serial(rho, 0.0, phi); };
    auto par = [&] { kernels::cross_correlate_density(rho, 0.0, phi); };
    rows.push_back({"cross_correlate_density (1024^2)", time_ms(serial, 3),
                    time_ms(par, 3)});
  }
  {
    auto serial = [&] { kernels::density_convolve_serial(rho, phi); };
    auto par = [&] { kernels::density_convolve(rho, phi); };
    rows.push_back(
        {"density_convolve (1024x128)", time_ms(serial, 3), time_ms(par, 3)});
  }
  {
    auto serial = [&] { kernels::oscillatory_transform_serial(phi, xi); };
    auto par = [&] { kernels::oscillatory_transform(phi, xi); };
    rows.push_back({"oscillatory_transform (513x1024)", time_ms(serial, 5),
                    time_ms(par, 5)});
  }
  {
    auto body = [&] { marginal_apply(phi, A22, y2); };
    const int saved = par::threads();
    par::set_threads(1);
    const double s = time_ms(body, 3);
    par::set_threads(saved);
    const double p = time_ms(body, 3);
    rows.push_back({"marginal_apply (64^2 Fock, 1024 nodes)", s, p});
  }

  std::printf("%-40s %12s %12s %8s\n", "kernel", "serial ms", "omp ms",
              "speedup");
  for (const auto& r : rows)
    std::printf("%-40s %12.3f %12.3f %8.2fx\n", r.name, r.serial_ms, r.par_ms,
                r.serial_ms / r.par_ms);
  return 0;
}
