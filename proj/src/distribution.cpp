#include "polycalc/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "polycalc/kernels.hpp"

namespace polycalc {

std::uint64_t Distribution::content_hash() const {
  std::uint64_t h = 14695981039346656037ull;
  for (const auto& a : atoms) {
    h = fnv1a(&a.location, sizeof(a.location), h);
    h = fnv1a(&a.order, sizeof(a.order), h);
    h = fnv1a(&a.weight, sizeof(a.weight), h);
  }
  for (const auto& p : parts) {
    h = fnv1a(&p.offset, sizeof(p.offset), h);
    h ^= p.base.content_hash();
    h *= 1099511628211ull;
  }
  return h;
}

Distribution delta_at(double a, int m) {
  if (a < 0.0) throw support_error("delta_at: support is the half-line, a >= 0");
  if (m < 0) throw parameter_error("delta_at: derivative order m >= 0");
  if (m > kMaxAtomOrder)
    throw capability_error("delta_at: atom order exceeds stencil depth");
  Distribution f;
  f.atoms.push_back(Atom{a, m, cplx{1.0, 0.0}});
  return f;
}

Distribution delta() { return delta_at(0.0, 0); }

Distribution make_density(TestFn base, double offset) {
  if (offset < 0.0) throw support_error("make_density: offset >= 0");
  Distribution f;
  f.parts.push_back(DensityPart{std::move(base), offset});
  return f;
}

void canonicalize(Distribution& f) {
  std::sort(f.atoms.begin(), f.atoms.end(), [](const Atom& a, const Atom& b) {
    if (a.location != b.location) return a.location < b.location;
    return a.order < b.order;
  });
  std::vector<Atom> merged;
  for (const auto& a : f.atoms) {
    if (!merged.empty() && merged.back().location == a.location &&
        merged.back().order == a.order)
      merged.back().weight += a.weight;
    else
      merged.push_back(a);
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Atom& a) {
                                return a.weight == cplx{0.0, 0.0};
                              }),
               merged.end());
  f.atoms = std::move(merged);
  std::stable_sort(f.parts.begin(), f.parts.end(),
                   [](const DensityPart& a, const DensityPart& b) {
                     if (a.offset != b.offset) return a.offset < b.offset;
                     return a.base.content_hash() < b.base.content_hash();
                   });
}

namespace {

int max_atom_order(const Distribution& f) {
  int m = 0;
  for (const auto& a : f.atoms) m = std::max(m, a.order);
  return m;
}

/// phi, phi', ..., phi^(m) by repeated diff_fn.
std::vector<TestFn> derivative_chain(const TestFn& phi, int m) {
  std::vector<TestFn> chain;
  chain.push_back(phi);
  for (int k = 0; k < m; ++k) chain.push_back(diff_fn(chain.back()));
  return chain;
}

double sign_pow(int m) { return (m % 2 == 0) ? 1.0 : -1.0; }

bool negligible_at_origin(const TestFn& base) {
  return std::abs(base.values.front()) <= kDecayTol * std::max(1.0, base.max_abs());
}

}  // namespace

cplx pairing(const Distribution& f, const TestFn& phi) {
  const int mmax = max_atom_order(f);
  if (mmax > kMaxAtomOrder)
    throw capability_error("pairing: atom order exceeds stencil depth");
  const auto chain = derivative_chain(phi, mmax);
  cplx acc{0.0, 0.0};
  for (const auto& a : f.atoms)
    acc += a.weight * sign_pow(a.order) * value_at(chain[a.order], a.location);
  for (const auto& p : f.parts) {
    const auto& g = *p.base.grid;
    cplx part{0.0, 0.0};
    for (std::size_t i = 0; i < g.size(); ++i)
      part += g.weights[i] * p.base.values[i] *
              value_at(phi, g.nodes[i] + p.offset);
    acc += part;
  }
  return acc;
}

Distribution convolve(const Distribution& f, const Distribution& g) {
  // Canonical operand order makes convolve(f,g) and convolve(g,f) run the
  // same arithmetic, so commutativity holds bitwise.
  const Distribution* a = &f;
  const Distribution* b = &g;
  if (a->content_hash() > b->content_hash()) std::swap(a, b);

  Distribution out;
  for (const auto& x : a->atoms)
    for (const auto& y : b->atoms) {
      if (x.order + y.order > kMaxAtomOrder)
        throw capability_error("convolve: atom order exceeds stencil depth");
      out.atoms.push_back(
          Atom{x.location + y.location, x.order + y.order, x.weight * y.weight});
    }
  auto atom_with_part = [&out](const Atom& x, const DensityPart& p) {
    TestFn base = p.base;
    if (x.order > 0 && !negligible_at_origin(base))
      throw boundary_error(
          "convolve: derivative atom against a density with non-negligible "
          "edge value would create a boundary term");
    for (int k = 0; k < x.order; ++k) base = diff_fn(base);
    if (x.weight != cplx{1.0, 0.0}) base = x.weight * base;
    out.parts.push_back(DensityPart{std::move(base), p.offset + x.location});
  };
  for (const auto& x : a->atoms)
    for (const auto& p : b->parts) atom_with_part(x, p);
  for (const auto& y : b->atoms)
    for (const auto& p : a->parts) atom_with_part(y, p);
  for (const auto& p : a->parts)
    for (const auto& q : b->parts) {
      TestFn conv = p.base;
      conv.values = kernels::density_convolve(p.base, q.base);
      conv.metadata = Metadata{};
      conv.metadata.truncation_bound =
          std::abs(p.base.values.back()) + std::abs(q.base.values.back());
      out.parts.push_back(DensityPart{std::move(conv), p.offset + q.offset});
    }
  canonicalize(out);
  return out;
}

TestFn cross_correlate(const Distribution& f, const TestFn& phi) {
  const int mmax = max_atom_order(f);
  if (mmax > kMaxAtomOrder)
    throw capability_error("cross_correlate: atom order exceeds stencil depth");
  const auto chain = derivative_chain(phi, mmax);

  TestFn out;
  out.grid = phi.grid;
  out.decay_tag = phi.decay_tag;
  out.values.assign(phi.size(), cplx{0.0, 0.0});
  const auto& s_nodes = phi.grid->nodes;
  for (const auto& a : f.atoms) {
    const double sgn = sign_pow(a.order);
    const auto& d = chain[a.order];
    if (a.location == 0.0 && a.order == 0) {
      // unit-law path: exact copy
      for (std::size_t k = 0; k < out.size(); ++k)
        out.values[k] += a.weight * d.values[k];
      continue;
    }
    for (std::size_t k = 0; k < out.size(); ++k)
      out.values[k] += a.weight * sgn * value_at(d, a.location + s_nodes[k]);
  }
  for (const auto& p : f.parts) {
    const auto vals = kernels::cross_correlate_density(p.base, p.offset, phi);
    for (std::size_t k = 0; k < out.size(); ++k) out.values[k] += vals[k];
  }
  return out;
}

Distribution distr_derivative(const Distribution& f) {
  Distribution out;
  for (const auto& a : f.atoms) {
    if (a.order + 1 > kMaxAtomOrder)
      throw capability_error("distr_derivative: atom order exceeds stencil depth");
    out.atoms.push_back(Atom{a.location, a.order + 1, a.weight});
  }
  for (const auto& p : f.parts) {
    if (!negligible_at_origin(p.base))
      throw boundary_error(
          "distr_derivative: density does not vanish at the support edge; "
          "refusing rather than dropping the boundary term");
    out.parts.push_back(DensityPart{diff_fn(p.base), p.offset});
  }
  canonicalize(out);
  return out;
}

PairingReport reconstruct_symbol(
    const std::function<TestFn(const TestFn&)>& K,
    const std::vector<TestFn>& probes) {
  PairingReport report;
  report.probes.reserve(probes.size());
  report.values.reserve(probes.size());
  for (std::size_t k = 0; k < probes.size(); ++k) {
    const TestFn image = K(probes[k]);
    report.probes.push_back("probe" + std::to_string(k));
    report.values.push_back(image.values.front());  // (K phi)(0)
  }
  return report;
}

double representation_distance(const Distribution& f, const Distribution& g) {
  Distribution a = f, b = g;
  canonicalize(a);
  canonicalize(b);
  double dist = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.atoms.size() || j < b.atoms.size()) {
    if (i < a.atoms.size() && j < b.atoms.size() &&
        a.atoms[i].location == b.atoms[j].location &&
        a.atoms[i].order == b.atoms[j].order) {
      dist = std::max(dist, std::abs(a.atoms[i].weight - b.atoms[j].weight));
      ++i, ++j;
    } else if (j >= b.atoms.size() ||
               (i < a.atoms.size() &&
                (a.atoms[i].location < b.atoms[j].location ||
                 (a.atoms[i].location == b.atoms[j].location &&
                  a.atoms[i].order < b.atoms[j].order)))) {
      dist = std::max(dist, std::abs(a.atoms[i].weight));
      ++i;
    } else {
      dist = std::max(dist, std::abs(b.atoms[j].weight));
      ++j;
    }
  }
  const std::size_t np = std::max(a.parts.size(), b.parts.size());
  for (std::size_t k = 0; k < np; ++k) {
    if (k >= a.parts.size())
      dist = std::max(dist, b.parts[k].base.max_abs());
    else if (k >= b.parts.size())
      dist = std::max(dist, a.parts[k].base.max_abs());
    else {
      dist = std::max(dist, std::abs(a.parts[k].offset - b.parts[k].offset));
      dist = std::max(dist, sup_distance(a.parts[k].base, b.parts[k].base));
    }
  }
  return dist;
}

Distribution scale(const cplx& c, const Distribution& f) {
  Distribution out = f;
  for (auto& a : out.atoms) a.weight *= c;
  for (auto& p : out.parts) p.base = c * p.base;
  return out;
}

}  // namespace polycalc
