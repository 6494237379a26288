#include "polycalc/grid.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <mutex>

namespace polycalc {

std::string to_string(QuadRule r) {
  return r == QuadRule::trapezoid ? "trapezoid" : "gauss_laguerre_mapped";
}

QuadRule quad_rule_from_string(const std::string& s) {
  if (s == "trapezoid") return QuadRule::trapezoid;
  if (s == "gauss_laguerre_mapped") return QuadRule::gauss_laguerre_mapped;
  throw parameter_error("unknown quadrature rule: " + s);
}

namespace {

struct Rule01 {
  std::vector<double> x, w;
};

void newton_legendre_01(std::size_t m, std::vector<double>& x,
                        std::vector<double>& w);

/// Rules are reused heavily by the per-node sub-quadratures; memoized.
const Rule01& cached_rule(std::size_t m) {
  static std::map<std::size_t, Rule01> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m);
  if (it == cache.end()) {
    Rule01 r;
    newton_legendre_01(m, r.x, r.w);
    it = cache.emplace(m, std::move(r)).first;
  }
  return it->second;
}

}  // namespace

void gauss_legendre_01(std::size_t m, std::vector<double>& x,
                       std::vector<double>& w) {
  const Rule01& r = cached_rule(m);
  x = r.x;
  w = r.w;
}

namespace {

void newton_legendre_01(std::size_t m, std::vector<double>& x,
                        std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  const std::size_t half = (m + 1) / 2;
  for (std::size_t i = 0; i < half; ++i) {
    // Chebyshev-like initial guess, then Newton on P_m.
    double z = std::cos(kPi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(m) + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (std::size_t j = 0; j < m; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = m * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    // map [-1,1] -> [0,1]; roots come out in decreasing z order
    x[i] = 0.5 * (1.0 - z);
    x[m - 1 - i] = 0.5 * (1.0 + z);
    const double wi = 1.0 / ((1.0 - z * z) * pp * pp);
    w[i] = wi;
    w[m - 1 - i] = wi;
  }
}

}  // namespace

void mapped_subrule(double s, double alpha, std::size_t m,
                    std::vector<double>& t, std::vector<double>& w) {
  std::vector<double> u, wu;
  gauss_legendre_01(m, u, wu);
  t.resize(m);
  w.resize(m);
  const double k = s / alpha;
  const double denom = std::expm1(k);
  if (k < 1e-8) {  // map degenerates to identity
    for (std::size_t i = 0; i < m; ++i) {
      t[i] = s * u[i];
      w[i] = s * wu[i];
    }
    return;
  }
  for (std::size_t i = 0; i < m; ++i) {
    t[i] = s * std::expm1(k * u[i]) / denom;
    w[i] = wu[i] * s * k * std::exp(k * u[i]) / denom;
  }
}

namespace {

GridPtr build_trapezoid(std::size_t n, double t_max) {
  auto g = std::make_shared<Grid>();
  g->t_max = t_max;
  g->rule = QuadRule::trapezoid;
  g->nodes.resize(n);
  g->weights.resize(n);
  const double h = t_max / static_cast<double>(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    g->nodes[i] = h * static_cast<double>(i);
    g->weights[i] = h;
  }
  g->nodes.back() = t_max;
  g->weights.front() = 0.5 * h;
  g->weights.back() = 0.5 * h;
  return g;
}

GridPtr build_mapped(std::size_t n, double t_max) {
  auto g = std::make_shared<Grid>();
  g->t_max = t_max;
  g->rule = QuadRule::gauss_laguerre_mapped;
  const std::size_t m = n - 1;
  std::vector<double> u, wu;
  gauss_legendre_01(m, u, wu);
  const double depth = -std::log1p(-u.back());  // map range of the top node
  const double alpha_max = t_max / depth;
  // Integer decay scales make the rule exact on pure exponentials, but only
  // round down when that keeps most of the node range.
  const double alpha =
      alpha_max >= 2.0 ? std::floor(alpha_max) : alpha_max;
  g->alpha = alpha;
  g->nodes.resize(n);
  g->weights.resize(n);
  // The origin node carries a vanishing weight; it exists so interpolation
  // and boundary stencils see an exact sample at t = 0.
  g->nodes[0] = 0.0;
  g->weights[0] = 1e-30;
  for (std::size_t i = 0; i < m; ++i) {
    g->nodes[i + 1] = -alpha * std::log1p(-u[i]);
    g->weights[i + 1] = wu[i] * alpha / (1.0 - u[i]);
  }
  return g;
}

}  // namespace

GridPtr build_grid(std::size_t n_points, double t_max, QuadRule rule) {
  // 8+ nodes for the mapped rule; the trapezoid rule admits any grid wide
  // enough for the interpolation stencils.
  const std::size_t min_points = rule == QuadRule::trapezoid ? 4 : 8;
  if (n_points < min_points)
    throw parameter_error("build_grid: too few points for the rule");
  if (!(t_max > 0.0)) throw parameter_error("build_grid: need t_max > 0");
  GridPtr g = rule == QuadRule::trapezoid ? build_trapezoid(n_points, t_max)
                                          : build_mapped(n_points, t_max);
  // invariants
  for (std::size_t i = 0; i + 1 < g->size(); ++i) {
    if (!(g->nodes[i] < g->nodes[i + 1]))
      throw parameter_error("build_grid: nodes not strictly increasing");
  }
  if (g->nodes.front() != 0.0 || g->nodes.back() > t_max * (1.0 + 1e-12))
    throw parameter_error("build_grid: nodes leave [0, t_max]");
  return g;
}

}  // namespace polycalc
