#include "polycalc/kernels.hpp"

#include <cmath>

#include "polycalc/parallel.hpp"

namespace polycalc::kernels {

namespace {

cplx correlate_one(const TestFn& base, double offset, const TestFn& phi,
                   double s) {
  const auto& g = *base.grid;
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i)
    acc += g.weights[i] * base.values[i] *
           value_at(phi, g.nodes[i] + offset + s);
  return acc;
}

}  // namespace

std::vector<cplx> cross_correlate_density_serial(const TestFn& base,
                                                 double offset,
                                                 const TestFn& phi) {
  const auto& s_nodes = phi.grid->nodes;
  std::vector<cplx> out(s_nodes.size());
  for (std::size_t k = 0; k < s_nodes.size(); ++k)
    out[k] = correlate_one(base, offset, phi, s_nodes[k]);
  return out;
}

std::vector<cplx> cross_correlate_density(const TestFn& base, double offset,
                                          const TestFn& phi) {
  if (!par::enabled()) return cross_correlate_density_serial(base, offset, phi);
  const auto& s_nodes = phi.grid->nodes;
  std::vector<cplx> out(s_nodes.size());
  const long n = static_cast<long>(s_nodes.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k)
    out[k] = correlate_one(base, offset, phi, s_nodes[k]);
  return out;
}

namespace {

struct ConvPlan {
  double alpha;
  std::size_t msub;
};

cplx convolve_one(const TestFn& a, const TestFn& b, double s,
                  const ConvPlan& plan) {
  if (s <= 0.0) return cplx{0.0, 0.0};
  std::vector<double> tau, w;
  mapped_subrule(s, plan.alpha, plan.msub, tau, w);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < tau.size(); ++i)
    acc += w[i] * value_at(a, tau[i]) * value_at(b, s - tau[i]);
  return acc;
}

ConvPlan make_plan(const TestFn& rho1, std::size_t msub) {
  const double alpha =
      rho1.grid->alpha > 0.0 ? rho1.grid->alpha : rho1.grid->t_max / 10.0;
  return ConvPlan{alpha, msub};
}

}  // namespace

std::vector<cplx> density_convolve_serial(const TestFn& rho1,
                                          const TestFn& rho2,
                                          std::size_t subrule_points) {
  const ConvPlan plan = make_plan(rho1, subrule_points);
  const auto& s_nodes = rho1.grid->nodes;
  std::vector<cplx> out(s_nodes.size());
  for (std::size_t k = 0; k < s_nodes.size(); ++k)
    out[k] = convolve_one(rho1, rho2, s_nodes[k], plan);
  return out;
}

std::vector<cplx> density_convolve(const TestFn& rho1, const TestFn& rho2,
                                   std::size_t subrule_points) {
  if (!par::enabled())
    return density_convolve_serial(rho1, rho2, subrule_points);
  const ConvPlan plan = make_plan(rho1, subrule_points);
  const auto& s_nodes = rho1.grid->nodes;
  std::vector<cplx> out(s_nodes.size());
  const long n = static_cast<long>(s_nodes.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k)
    out[k] = convolve_one(rho1, rho2, s_nodes[k], plan);
  return out;
}

namespace {

cplx transform_one(const TestFn& fn, double xi) {
  const auto& g = *fn.grid;
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double ph = -g.nodes[i] * xi;
    acc += g.weights[i] * fn.values[i] * cplx{std::cos(ph), std::sin(ph)};
  }
  return acc;
}

}  // namespace

std::vector<cplx> oscillatory_transform_serial(const TestFn& fn,
                                               const std::vector<double>& xi) {
  std::vector<cplx> out(xi.size());
  for (std::size_t k = 0; k < xi.size(); ++k) out[k] = transform_one(fn, xi[k]);
  return out;
}

std::vector<cplx> oscillatory_transform(const TestFn& fn,
                                        const std::vector<double>& xi) {
  if (!par::enabled()) return oscillatory_transform_serial(fn, xi);
  std::vector<cplx> out(xi.size());
  const long n = static_cast<long>(xi.size());
#pragma omp parallel for schedule(static)
  for (long k = 0; k < n; ++k) out[k] = transform_one(fn, xi[k]);
  return out;
}

}  // namespace polycalc::kernels
