#include "polycalc/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "polycalc/kernels.hpp"

namespace polycalc {

std::shared_ptr<const FreqGrid> FreqGrid::make(double xi_max,
                                               std::size_t n_points) {
  if (!(xi_max > 0.0)) throw parameter_error("FreqGrid: xi_max > 0");
  if (n_points < 3 || n_points % 2 == 0)
    throw parameter_error("FreqGrid: need an odd node count >= 3");
  auto g = std::make_shared<FreqGrid>();
  g->xi_max = xi_max;
  g->xi.resize(n_points);
  const double h = 2.0 * xi_max / static_cast<double>(n_points - 1);
  const std::size_t mid = (n_points - 1) / 2;
  for (std::size_t k = 0; k < n_points; ++k)
    g->xi[k] = (static_cast<double>(k) - static_cast<double>(mid)) * h;
  g->xi.front() = -xi_max;
  g->xi.back() = xi_max;
  g->xi[mid] = 0.0;
  return g;
}

namespace {

void check_resolution(const TestFn& phi, double xi_max, Metadata& meta) {
  const double h = live_spacing(phi);
  const double phase = xi_max * h;
  if (phase > kPi)
    throw resolution_error(
        "fourier: oscillation under-resolved (phase per live node step " +
        std::to_string(phase) + " > pi)");
  if (phase > 1.0) {
    char buf[96];
    std::snprintf(buf, sizeof(buf),
                  "fourier: xi_max*h = %.3f on the live region", phase);
    meta.warn(buf);
  }
}

}  // namespace

FreqFn fourier_fn(const TestFn& phi, FreqGridPtr grid) {
  FreqFn out;
  out.grid = std::move(grid);
  check_resolution(phi, out.grid->xi_max, out.metadata);
  out.values = kernels::oscillatory_transform(phi, out.grid->xi);
  return out;
}

PolyFreq fourier_poly(const PolyTest& p, FreqGridPtr grid) {
  PolyFreq out;
  out.max_degree = p.max_degree;
  out.terms.resize(p.max_degree + 1);
  std::map<std::uint64_t, FreqFn> memo;
  for (int n = 0; n <= p.max_degree; ++n) {
    for (const auto& t : p.terms[n]) {
      FreqTerm r;
      r.coeff = t.coeff;
      for (const auto& phi : t.factors) {
        const auto key = phi.content_hash();
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, fourier_fn(phi, grid)).first;
        r.factors.push_back(it->second);
      }
      out.terms[n].push_back(std::move(r));
    }
  }
  return out;
}

namespace {

cplx freq_value_at(const FreqFn& fh, double x) {
  const auto& xi = fh.grid->xi;
  if (x < xi.front() || x > xi.back())
    throw parameter_error("eval_poly_freq: frequency outside the grid");
  const double h = fh.grid->spacing();
  const std::size_t j = std::min<std::size_t>(
      static_cast<std::size_t>((x - xi.front()) / h), xi.size() - 2);
  const double f = (x - xi[j]) / h;
  return (1.0 - f) * fh.values[j] + f * fh.values[j + 1];
}

std::vector<std::vector<std::size_t>> perms_of(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

double fact(std::size_t n) {
  double r = 1.0;
  for (std::size_t k = 2; k <= n; ++k) r *= static_cast<double>(k);
  return r;
}

}  // namespace

cplx eval_poly_freq(const PolyFreq& ph, int degree,
                    const std::vector<double>& xis) {
  if (degree < 0 || degree > ph.max_degree)
    throw parameter_error("eval_poly_freq: degree out of range");
  cplx acc{0.0, 0.0};
  for (const auto& t : ph.terms[degree]) {
    if (degree == 0) {
      acc += t.coeff;
      continue;
    }
    const auto perms = perms_of(t.factors.size());
    cplx sym{0.0, 0.0};
    for (const auto& sigma : perms) {
      cplx prod{1.0, 0.0};
      for (std::size_t j = 0; j < sigma.size(); ++j)
        prod *= freq_value_at(t.factors[sigma[j]], xis[j]);
      sym += prod;
    }
    acc += t.coeff * sym / fact(t.factors.size());
  }
  return acc;
}

namespace {

cplx laplace_1d(const TestFn& chi, const cplx& lambda) {
  const auto& g = *chi.grid;
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < g.size(); ++i)
    acc += g.weights[i] * std::exp(-lambda * g.nodes[i]) * chi.values[i];
  return acc;
}

}  // namespace

cplx laplace_eval(const PolyTest& p, int degree,
                  const std::vector<cplx>& lambda) {
  if (degree < 0 || degree > p.max_degree)
    throw parameter_error("laplace_eval: degree out of range");
  if (static_cast<int>(lambda.size()) != degree)
    throw parameter_error("laplace_eval: need one lambda per slot");
  for (const auto& l : lambda)
    if (!(l.real() > 0.0))
      throw domain_error("laplace_eval: Re lambda_j > 0 required");
  std::map<std::pair<std::uint64_t, std::size_t>, cplx> memo;
  auto L = [&](const TestFn& chi, std::size_t j) {
    const auto key = std::make_pair(chi.content_hash(), j);
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, laplace_1d(chi, lambda[j])).first;
    return it->second;
  };
  cplx acc{0.0, 0.0};
  for (const auto& t : p.terms[degree]) {
    if (degree == 0) {
      acc += t.coeff;
      continue;
    }
    const auto perms = perms_of(t.factors.size());
    cplx sym{0.0, 0.0};
    for (const auto& sigma : perms) {
      cplx prod{1.0, 0.0};
      for (std::size_t j = 0; j < sigma.size(); ++j)
        prod *= L(t.factors[sigma[j]], j);
      sym += prod;
    }
    acc += t.coeff * sym / fact(t.factors.size());
  }
  return acc;
}

// ---------------------------------------------------------------------------
// 2*pi duality
// ---------------------------------------------------------------------------

namespace {

cplx ipow(const cplx& z, int q) {
  cplx r{1.0, 0.0};
  const cplx b = q >= 0 ? z : 1.0 / z;
  for (int k = 0; k < std::abs(q); ++k) r *= b;
  return r;
}

/// int_Xi^inf xi^q e^{i a xi} dxi for a > 0, via the rotated contour
/// xi = Xi + i v (Abel-regularized for q >= 0).
cplx tail_oscillatory(int q, double a, double Xi) {
  std::vector<double> v, w;
  mapped_subrule(60.0 / a, 6.0 / a, 160, v, w);
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < v.size(); ++i)
    acc += w[i] * ipow(cplx{Xi, v[i]}, q) * std::exp(-a * v[i]);
  return cplx{0.0, 1.0} * std::exp(cplx{0.0, a * Xi}) * acc;
}

/// Two-sided tail sum int_{|xi|>Xi} xi^q e^{i a xi} dxi. For a = 0 the odd
/// powers cancel symmetrically except q = -1, whose one-sided limit a->0+
/// contributes i*pi (this is what keeps <delta_0, phi> = phi(0+) rather
/// than the principal-value half).
cplx tail_power(int q, double a, double Xi, const cplx& coef) {
  if (a == 0.0) {
    if (q == -1) return coef * cplx{0.0, kPi};
    if (q % 2 != 0) return cplx{0.0, 0.0};
    if (q >= 0) {
      if (std::abs(coef) > 1e-6)
        throw boundary_error(
            "fourier_pair_check: divergent frequency tail; this pairing "
            "needs vanishing boundary derivatives of phi (boundary-safe "
            "corpus only)");
      return cplx{0.0, 0.0};
    }
    return coef * 2.0 * std::pow(Xi, q + 1) / static_cast<double>(-q - 1);
  }
  const cplx right = tail_oscillatory(q, a, Xi);
  const cplx left = (q % 2 == 0 ? 1.0 : -1.0) * std::conj(right);
  return coef * (right + left);
}

}  // namespace

DualityPair fourier_pair_check(const Distribution& f, const TestFn& phi,
                               const DualityOptions& opts) {
  const int K = opts.tail_terms;
  auto xig = FreqGrid::make(opts.xi_max, opts.n_xi);
  const double Xi = opts.xi_max;
  const auto& xi = xig->xi;
  const double h = xig->spacing();

  FreqFn phihat = fourier_fn(phi, xig);
  const auto pb = boundary_derivatives(phi, K);

  // trapezoid weights on the frequency grid
  std::vector<double> wxi(xi.size(), h);
  wxi.front() = wxi.back() = 0.5 * h;

  cplx lhs{0.0, 0.0};
  const cplx iu{0.0, 1.0};

  for (const auto& atom : f.atoms) {
    // fhat(-xi) = (-i xi)^m e^{i a xi}
    cplx q_sum{0.0, 0.0};
    for (std::size_t k = 0; k < xi.size(); ++k) {
      const cplx sym = ipow(cplx{0.0, -xi[k]}, atom.order) *
                       std::exp(cplx{0.0, atom.location * xi[k]});
      q_sum += wxi[k] * sym * phihat.values[k];
    }
    lhs += atom.weight * q_sum;
    for (int k = 0; k <= K; ++k) {
      const int q = atom.order - k - 1;
      const cplx coef =
          atom.weight * pb[k] * ipow(-iu, atom.order) * ipow(iu, -k - 1);
      lhs += tail_power(q, atom.location, Xi, coef);
    }
  }

  for (const auto& part : f.parts) {
    // fhat(-xi) = e^{i off xi} * basehat(-xi)
    std::vector<double> neg_xi(xi.size());
    for (std::size_t k = 0; k < xi.size(); ++k) neg_xi[k] = -xi[k];
    const auto basehat_neg =
        kernels::oscillatory_transform(part.base, neg_xi);
    cplx q_sum{0.0, 0.0};
    for (std::size_t k = 0; k < xi.size(); ++k)
      q_sum += wxi[k] * std::exp(cplx{0.0, part.offset * xi[k]}) *
               basehat_neg[k] * phihat.values[k];
    lhs += q_sum;
    const auto db = boundary_derivatives(part.base, K);
    for (int j = 0; j <= K; ++j)
      for (int k = 0; k <= K; ++k) {
        const int q = -(j + k + 2);
        const cplx coef = db[j] * pb[k] * ipow(-iu, -j - 1) * ipow(iu, -k - 1);
        lhs += tail_power(q, part.offset, Xi, coef);
      }
  }

  DualityPair out;
  out.lhs = lhs;
  out.rhs = kTwoPi * pairing(f, phi);
  return out;
}

}  // namespace polycalc
