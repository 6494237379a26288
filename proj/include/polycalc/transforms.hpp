#pragma once

#include <memory>
#include <vector>

#include "polycalc/common.hpp"
#include "polycalc/distribution.hpp"
#include "polycalc/fock.hpp"

namespace polycalc {

/// Symmetric uniform frequency grid on [-xi_max, xi_max].
struct FreqGrid {
  double xi_max = 16.0;
  std::vector<double> xi;  // odd count, symmetric about 0

  static std::shared_ptr<const FreqGrid> make(double xi_max,
                                              std::size_t n_points);
  std::size_t size() const { return xi.size(); }
  double spacing() const { return xi[1] - xi[0]; }
};

using FreqGridPtr = std::shared_ptr<const FreqGrid>;

struct FreqFn {
  FreqGridPtr grid;
  std::vector<cplx> values;
  Metadata metadata;
};

/// phi_hat(xi) = int_0^inf e^{-i t xi} phi(t) dt by direct quadrature
/// against the oscillatory kernel. Warns when the grid under-resolves the
/// oscillation where the function lives; throws resolution_error past the
/// hard threshold (half a period per live node step).
FreqFn fourier_fn(const TestFn& phi, FreqGridPtr grid);

/// Factorwise transform of a graded test function.
struct FreqTerm {
  cplx coeff{0.0, 0.0};
  std::vector<FreqFn> factors;
};
struct PolyFreq {
  int max_degree = 0;
  std::vector<std::vector<FreqTerm>> terms;
};
PolyFreq fourier_poly(const PolyTest& p, FreqGridPtr grid);

/// Evaluate a degree-n component of a PolyFreq at (xi_1..xi_n) by linear
/// interpolation on the frequency grid.
cplx eval_poly_freq(const PolyFreq& ph, int degree,
                    const std::vector<double>& xis);

/// Laplace transform of the degree-n component at lambda in C^n with
/// Re lambda_j > 0. Rank-1 terms factorize into 1-D quadratures; the
/// symmetrization averages over slot assignments of lambda.
cplx laplace_eval(const PolyTest& p, int degree, const std::vector<cplx>& lambda);

struct DualityOptions {
  double xi_max = 16.0;
  std::size_t n_xi = 513;
  int tail_terms = 5;  // boundary-derivative depth of the tail expansion
};

struct DualityPair {
  cplx lhs;  // frequency-side pairing
  cplx rhs;  // 2*pi*<f, phi>
};

/// The 2*pi duality check. The frequency side is the truncated pairing
/// integral int_{-Xi}^{Xi} fhat(-xi) phihat(xi) dxi plus an analytic tail
/// built from the integration-by-parts expansion
///   phihat(xi) ~ sum_k phi^(k)(0) / (i xi)^{k+1},
/// with atom symbols in closed form. At the support edge the q = -1 tail
/// power carries the one-sided boundary value i*pi (the symmetric principal
/// value would halve the Dirac pairing there). Oscillatory tails for atoms
/// at a > 0 are evaluated on a rotated contour.
DualityPair fourier_pair_check(const Distribution& f, const TestFn& phi,
                               const DualityOptions& opts = {});

}  // namespace polycalc
