#pragma once

#include <vector>

#include "polycalc/common.hpp"
#include "polycalc/distribution.hpp"
#include "polycalc/testfn.hpp"

namespace polycalc {

/// c * Sym(factors[0] (x) ... (x) factors[n-1]); degree 0 terms are scalars.
struct TestTerm {
  cplx coeff{0.0, 0.0};
  std::vector<TestFn> factors;
};

/// Graded polynomial test function: per degree n <= max_degree a finite
/// list of symmetric rank-1 terms, kept in canonical (content hash) order.
struct PolyTest {
  int max_degree = 0;
  std::vector<std::vector<TestTerm>> terms;  // terms[n], n = 0..max_degree

  static PolyTest zero(int max_degree);
};

/// Diagonal term c * base^{(x) n}.
struct DistTerm {
  cplx coeff{0.0, 0.0};
  Distribution base;
};

/// General symmetric rank-1 term over distribution factors. Produced by the
/// graded derivation; consumed by cross-correlation and pairing, never by
/// the boxtimes product.
struct DistGenTerm {
  cplx coeff{0.0, 0.0};
  std::vector<Distribution> factors;
};

/// Graded polynomial distribution. The algebra generators are the diagonal
/// terms; the general list only holds derivation images.
struct PolyDist {
  int max_degree = 0;
  std::vector<std::vector<DistTerm>> diag;
  std::vector<std::vector<DistGenTerm>> general;

  static PolyDist zero(int max_degree);
  bool has_general() const;
};

/// (1, phi, phi^{(x)2}, ..., phi^{(x)N})
PolyTest power_test(const TestFn& phi, int N);

/// (1, f, f^{(x)2}, ..., f^{(x)N})
PolyDist power_dist(const Distribution& f, int N);

/// The boxtimes unit (delta^{(x)n}).
PolyDist boxtimes_unit(int N);

/// Degreewise product: (c1, f)(c2, g) -> (c1 c2, f*g) at each degree.
PolyDist boxtimes(const PolyDist& F, const PolyDist& G);

/// F ⋆ p: the tensor-power cross-correlation acting slotwise.
PolyTest cross_corr_poly(const PolyDist& F, const PolyTest& p);

/// T_s^{(x)}: shift every factor of every term by the same s.
PolyTest poly_shift(const PolyTest& p, double s);

/// Graded derivation: replace one slot by its derivative, summed over
/// slots; degree 0 maps to 0.
PolyTest poly_derivative_test(const PolyTest& p);
PolyDist poly_derivative_dist(const PolyDist& F);

/// <F, p> = sum_n sum_terms c d prod_j <f_j, phi_j> (permanent-averaged for
/// general terms paired against symmetrized factors).
cplx poly_pairing(const PolyDist& F, const PolyTest& p);

/// Evaluate the degree-n component at a point tuple (t_1..t_n).
cplx eval_poly_test(const PolyTest& p, int degree,
                    const std::vector<double>& ts);

/// Sup distance of degree components over a deterministic probe tuple set.
double poly_sup_distance(const PolyTest& p, const PolyTest& q);

PolyTest poly_scale(const cplx& c, const PolyTest& p);
PolyTest poly_add(const PolyTest& p, const PolyTest& q);

/// Canonicalize term order and merge identical-factor terms.
void canonicalize(PolyTest& p);
void canonicalize(PolyDist& F);

}  // namespace polycalc
