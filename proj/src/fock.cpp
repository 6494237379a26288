#include "polycalc/fock.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace polycalc {

PolyTest PolyTest::zero(int max_degree) {
  PolyTest p;
  p.max_degree = max_degree;
  p.terms.resize(max_degree + 1);
  return p;
}

PolyDist PolyDist::zero(int max_degree) {
  PolyDist f;
  f.max_degree = max_degree;
  f.diag.resize(max_degree + 1);
  f.general.resize(max_degree + 1);
  return f;
}

bool PolyDist::has_general() const {
  for (const auto& g : general)
    if (!g.empty()) return true;
  return false;
}

namespace {

std::vector<std::uint64_t> factor_hashes(const TestTerm& t) {
  std::vector<std::uint64_t> h;
  h.reserve(t.factors.size());
  for (const auto& f : t.factors) h.push_back(f.content_hash());
  return h;
}

void sort_factors(TestTerm& t) {
  std::stable_sort(t.factors.begin(), t.factors.end(),
                   [](const TestFn& a, const TestFn& b) {
                     return a.content_hash() < b.content_hash();
                   });
}

void sort_factors(DistGenTerm& t) {
  std::stable_sort(t.factors.begin(), t.factors.end(),
                   [](const Distribution& a, const Distribution& b) {
                     return a.content_hash() < b.content_hash();
                   });
}

template <typename Term>
std::vector<std::uint64_t> hashes_of(const Term& t);

template <>
std::vector<std::uint64_t> hashes_of(const TestTerm& t) {
  return factor_hashes(t);
}

template <>
std::vector<std::uint64_t> hashes_of(const DistGenTerm& t) {
  std::vector<std::uint64_t> h;
  for (const auto& f : t.factors) h.push_back(f.content_hash());
  return h;
}

template <typename Term>
void canonicalize_terms(std::vector<Term>& terms) {
  for (auto& t : terms) sort_factors(t);
  std::stable_sort(terms.begin(), terms.end(),
                   [](const Term& a, const Term& b) {
                     return hashes_of(a) < hashes_of(b);
                   });
  std::vector<Term> merged;
  for (auto& t : terms) {
    if (!merged.empty() && hashes_of(merged.back()) == hashes_of(t))
      merged.back().coeff += t.coeff;
    else
      merged.push_back(std::move(t));
  }
  merged.erase(std::remove_if(merged.begin(), merged.end(),
                              [](const Term& t) {
                                return t.coeff == cplx{0.0, 0.0};
                              }),
               merged.end());
  terms = std::move(merged);
}

void sort_factors(TestTerm& t);

}  // namespace

void canonicalize(PolyTest& p) {
  for (auto& deg : p.terms) canonicalize_terms(deg);
}

void canonicalize(PolyDist& F) {
  for (auto& deg : F.diag) {
    std::stable_sort(deg.begin(), deg.end(),
                     [](const DistTerm& a, const DistTerm& b) {
                       return a.base.content_hash() < b.base.content_hash();
                     });
    std::vector<DistTerm> merged;
    for (auto& t : deg) {
      if (!merged.empty() &&
          merged.back().base.content_hash() == t.base.content_hash())
        merged.back().coeff += t.coeff;
      else
        merged.push_back(std::move(t));
    }
    merged.erase(std::remove_if(merged.begin(), merged.end(),
                                [](const DistTerm& t) {
                                  return t.coeff == cplx{0.0, 0.0};
                                }),
                 merged.end());
    deg = std::move(merged);
  }
  for (auto& deg : F.general) canonicalize_terms(deg);
}

PolyTest power_test(const TestFn& phi, int N) {
  if (N < 0) throw parameter_error("power_test: N >= 0");
  PolyTest p = PolyTest::zero(N);
  p.terms[0].push_back(TestTerm{cplx{1.0, 0.0}, {}});
  for (int n = 1; n <= N; ++n) {
    TestTerm t;
    t.coeff = cplx{1.0, 0.0};
    t.factors.assign(n, phi);
    p.terms[n].push_back(std::move(t));
  }
  return p;
}

PolyDist power_dist(const Distribution& f, int N) {
  if (N < 0) throw parameter_error("power_dist: N >= 0");
  PolyDist F = PolyDist::zero(N);
  F.diag[0].push_back(DistTerm{cplx{1.0, 0.0}, delta()});
  for (int n = 1; n <= N; ++n)
    F.diag[n].push_back(DistTerm{cplx{1.0, 0.0}, f});
  return F;
}

PolyDist boxtimes_unit(int N) { return power_dist(delta(), N); }

PolyDist boxtimes(const PolyDist& F, const PolyDist& G) {
  if (F.has_general() || G.has_general())
    throw capability_error(
        "boxtimes: derivation images are not boxtimes operands");
  const int N = std::max(F.max_degree, G.max_degree);
  PolyDist out = PolyDist::zero(N);
  std::map<std::pair<std::uint64_t, std::uint64_t>, Distribution> memo;
  for (int n = 0; n <= N; ++n) {
    if (n >= static_cast<int>(F.diag.size()) ||
        n >= static_cast<int>(G.diag.size()))
      continue;
    for (const auto& a : F.diag[n])
      for (const auto& b : G.diag[n]) {
        if (n == 0) {
          out.diag[0].push_back(DistTerm{a.coeff * b.coeff, delta()});
          continue;
        }
        const auto key = std::minmax(a.base.content_hash(), b.base.content_hash());
        auto it = memo.find(key);
        if (it == memo.end())
          it = memo.emplace(key, convolve(a.base, b.base)).first;
        out.diag[n].push_back(DistTerm{a.coeff * b.coeff, it->second});
      }
  }
  canonicalize(out);
  return out;
}

namespace {

/// Cache of f ⋆ phi keyed by content hashes.
struct CorrMemo {
  std::map<std::pair<std::uint64_t, std::uint64_t>, TestFn> map;

  const TestFn& get(const Distribution& f, const TestFn& phi) {
    const auto key = std::make_pair(f.content_hash(), phi.content_hash());
    auto it = map.find(key);
    if (it == map.end()) it = map.emplace(key, cross_correlate(f, phi)).first;
    return it->second;
  }
};

std::vector<std::vector<std::size_t>> permutations_of(std::size_t n) {
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::vector<std::vector<std::size_t>> out;
  do {
    out.push_back(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return out;
}

double factorial(std::size_t n) {
  double r = 1.0;
  for (std::size_t k = 2; k <= n; ++k) r *= static_cast<double>(k);
  return r;
}

}  // namespace

PolyTest cross_corr_poly(const PolyDist& F, const PolyTest& p) {
  if (F.max_degree != p.max_degree)
    throw parameter_error("cross_corr_poly: degree caps differ");
  const int N = p.max_degree;
  PolyTest out = PolyTest::zero(N);
  CorrMemo memo;
  for (int n = 0; n <= N; ++n) {
    for (const auto& pt : p.terms[n]) {
      if (n == 0) {
        for (const auto& ft : F.diag[0])
          out.terms[0].push_back(TestTerm{ft.coeff * pt.coeff, {}});
        for (const auto& gt : F.general[0])
          out.terms[0].push_back(TestTerm{gt.coeff * pt.coeff, {}});
        continue;
      }
      for (const auto& ft : F.diag[n]) {
        TestTerm t;
        t.coeff = ft.coeff * pt.coeff;
        t.factors.reserve(n);
        for (const auto& phi : pt.factors)
          t.factors.push_back(memo.get(ft.base, phi));
        out.terms[n].push_back(std::move(t));
      }
      for (const auto& gt : F.general[n]) {
        // Sym(f_1 (x) ... (x) f_n) acts on a symmetrized term by averaging
        // over slot assignments.
        const auto perms = permutations_of(gt.factors.size());
        const cplx c = gt.coeff * pt.coeff / factorial(gt.factors.size());
        for (const auto& sigma : perms) {
          TestTerm t;
          t.coeff = c;
          t.factors.reserve(n);
          for (std::size_t j = 0; j < sigma.size(); ++j)
            t.factors.push_back(memo.get(gt.factors[sigma[j]], pt.factors[j]));
          out.terms[n].push_back(std::move(t));
        }
      }
    }
  }
  canonicalize(out);
  return out;
}

PolyTest poly_shift(const PolyTest& p, double s) {
  if (s < 0.0) throw parameter_error("poly_shift: s >= 0");
  PolyTest out = PolyTest::zero(p.max_degree);
  std::map<std::uint64_t, TestFn> memo;
  for (int n = 0; n <= p.max_degree; ++n) {
    for (const auto& t : p.terms[n]) {
      TestTerm r;
      r.coeff = t.coeff;
      r.factors.reserve(t.factors.size());
      for (const auto& phi : t.factors) {
        const auto key = phi.content_hash();
        auto it = memo.find(key);
        if (it == memo.end()) it = memo.emplace(key, shift_fn(phi, s)).first;
        r.factors.push_back(it->second);
      }
      out.terms[n].push_back(std::move(r));
    }
  }
  canonicalize(out);
  return out;
}

PolyTest poly_derivative_test(const PolyTest& p) {
  PolyTest out = PolyTest::zero(p.max_degree);
  std::map<std::uint64_t, TestFn> memo;
  auto dfn = [&memo](const TestFn& phi) {
    const auto key = phi.content_hash();
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, diff_fn(phi)).first;
    return it->second;
  };
  for (int n = 1; n <= p.max_degree; ++n) {
    for (const auto& t : p.terms[n]) {
      for (std::size_t j = 0; j < t.factors.size(); ++j) {
        TestTerm r = t;
        r.factors[j] = dfn(t.factors[j]);
        out.terms[n].push_back(std::move(r));
      }
    }
  }
  canonicalize(out);
  return out;
}

PolyDist poly_derivative_dist(const PolyDist& F) {
  PolyDist out = PolyDist::zero(F.max_degree);
  std::map<std::uint64_t, Distribution> memo;
  auto dfn = [&memo](const Distribution& f) {
    const auto key = f.content_hash();
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, distr_derivative(f)).first;
    return it->second;
  };
  for (int n = 1; n <= F.max_degree; ++n) {
    for (const auto& t : F.diag[n]) {
      for (int j = 0; j < n; ++j) {
        DistGenTerm r;
        r.coeff = t.coeff;
        r.factors.assign(n, t.base);
        r.factors[j] = dfn(t.base);
        out.general[n].push_back(std::move(r));
      }
    }
    for (const auto& t : F.general[n]) {
      for (std::size_t j = 0; j < t.factors.size(); ++j) {
        DistGenTerm r = t;
        r.factors[j] = dfn(t.factors[j]);
        out.general[n].push_back(std::move(r));
      }
    }
  }
  canonicalize(out);
  return out;
}

cplx poly_pairing(const PolyDist& F, const PolyTest& p) {
  if (F.max_degree != p.max_degree)
    throw parameter_error("poly_pairing: degree caps differ");
  std::map<std::pair<std::uint64_t, std::uint64_t>, cplx> memo;
  auto pair_memo = [&memo](const Distribution& f, const TestFn& phi) {
    const auto key = std::make_pair(f.content_hash(), phi.content_hash());
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, pairing(f, phi)).first;
    return it->second;
  };
  cplx acc{0.0, 0.0};
  for (int n = 0; n <= p.max_degree; ++n) {
    for (const auto& pt : p.terms[n]) {
      if (n == 0) {
        for (const auto& ft : F.diag[0]) acc += ft.coeff * pt.coeff;
        for (const auto& gt : F.general[0]) acc += gt.coeff * pt.coeff;
        continue;
      }
      for (const auto& ft : F.diag[n]) {
        cplx prod{1.0, 0.0};
        for (const auto& phi : pt.factors) prod *= pair_memo(ft.base, phi);
        acc += ft.coeff * pt.coeff * prod;
      }
      for (const auto& gt : F.general[n]) {
        const auto perms = permutations_of(gt.factors.size());
        cplx sym{0.0, 0.0};
        for (const auto& sigma : perms) {
          cplx prod{1.0, 0.0};
          for (std::size_t j = 0; j < sigma.size(); ++j)
            prod *= pair_memo(gt.factors[sigma[j]], pt.factors[j]);
          sym += prod;
        }
        acc += gt.coeff * pt.coeff * sym / factorial(gt.factors.size());
      }
    }
  }
  return acc;
}

cplx eval_poly_test(const PolyTest& p, int degree,
                    const std::vector<double>& ts) {
  if (degree < 0 || degree > p.max_degree)
    throw parameter_error("eval_poly_test: degree out of range");
  if (static_cast<int>(ts.size()) != degree)
    throw parameter_error("eval_poly_test: tuple arity must equal degree");
  cplx acc{0.0, 0.0};
  for (const auto& t : p.terms[degree]) {
    if (degree == 0) {
      acc += t.coeff;
      continue;
    }
    const auto perms = permutations_of(t.factors.size());
    cplx sym{0.0, 0.0};
    for (const auto& sigma : perms) {
      cplx prod{1.0, 0.0};
      for (std::size_t j = 0; j < sigma.size(); ++j)
        prod *= value_at(t.factors[sigma[j]], ts[j]);
      sym += prod;
    }
    acc += t.coeff * sym / factorial(t.factors.size());
  }
  return acc;
}

namespace {

const std::vector<double>& probe_points() {
  static const std::vector<double> pts = {0.0, 0.11, 0.37, 0.8,
                                          1.5, 2.6,  4.1, 6.3};
  return pts;
}

}  // namespace

double poly_sup_distance(const PolyTest& p, const PolyTest& q) {
  if (p.max_degree != q.max_degree)
    throw parameter_error("poly_sup_distance: degree caps differ");
  const auto& pts = probe_points();
  double dist = 0.0;
  for (int n = 0; n <= p.max_degree; ++n) {
    std::vector<std::size_t> idx(n, 0);
    while (true) {
      std::vector<double> tup(n);
      for (int j = 0; j < n; ++j) tup[j] = pts[idx[j]];
      dist = std::max(dist, std::abs(eval_poly_test(p, n, tup) -
                                     eval_poly_test(q, n, tup)));
      int j = n - 1;
      for (; j >= 0; --j) {
        if (++idx[j] < pts.size()) break;
        idx[j] = 0;
      }
      if (j < 0) break;
    }
  }
  return dist;
}

PolyTest poly_scale(const cplx& c, const PolyTest& p) {
  PolyTest out = p;
  for (auto& deg : out.terms)
    for (auto& t : deg) t.coeff *= c;
  return out;
}

PolyTest poly_add(const PolyTest& p, const PolyTest& q) {
  if (p.max_degree != q.max_degree)
    throw parameter_error("poly_add: degree caps differ");
  PolyTest out = p;
  for (int n = 0; n <= q.max_degree; ++n)
    out.terms[n].insert(out.terms[n].end(), q.terms[n].begin(),
                        q.terms[n].end());
  canonicalize(out);
  return out;
}

}  // namespace polycalc
