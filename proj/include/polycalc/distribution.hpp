#pragma once

#include <functional>
#include <vector>

#include "polycalc/common.hpp"
#include "polycalc/testfn.hpp"

namespace polycalc {

/// Highest Dirac derivative order the stencil machinery supports.
constexpr int kMaxAtomOrder = 3;

/// weight * delta_{location}^(order)
struct Atom {
  double location = 0.0;
  int order = 0;
  cplx weight{0.0, 0.0};
};

/// One regular piece: the function base(t - offset) supported on
/// [offset, inf). Keeping the offset explicit means a convolution with
/// delta_a never resamples a jump across the grid; every quadrature sees
/// the smooth base.
struct DensityPart {
  TestFn base;
  double offset = 0.0;
};

/// Tempered distribution supported on the half-line: a finite sum of Dirac
/// atoms (with derivative orders) plus a regular part, stored as a short
/// list of offset densities so the class is closed under convolution.
struct Distribution {
  std::vector<Atom> atoms;
  std::vector<DensityPart> parts;

  bool has_density() const { return !parts.empty(); }
  std::uint64_t content_hash() const;
};

/// Pairings of a reconstructed symbol against a list of probes.
struct PairingReport {
  std::vector<std::string> probes;
  std::vector<cplx> values;
};

/// Single atom (a, m, 1). a >= 0, m >= 0.
Distribution delta_at(double a, int m = 0);

/// The convolution unit delta_0.
Distribution delta();

Distribution make_density(TestFn base, double offset = 0.0);

/// Canonicalize: sort atoms by (location, order), merge duplicates, drop
/// zero weights; order density parts by (offset, content hash).
void canonicalize(Distribution& f);

/// <f, phi> = sum_atoms w (-1)^m phi^(m)(a) + int density * phi.
cplx pairing(const Distribution& f, const TestFn& phi);

/// Convolution on S'_+. Atom x atom adds locations and orders; atom x
/// density shifts the part offset (differentiating the base m times);
/// density x density convolves the bases on the grid.
Distribution convolve(const Distribution& f, const Distribution& g);

/// (f ⋆ phi)(s) = <f, phi(. + s)>, sampled on phi's grid.
TestFn cross_correlate(const Distribution& f, const TestFn& phi);

/// Generalized derivative: atom orders increment; density bases are
/// differentiated. Refuses bases with a non-negligible value at the support
/// edge (the boundary term has no representation here).
Distribution distr_derivative(const Distribution& f);

/// Theorem-converse reconstruction: values[k] = (K probes[k])(0).
PairingReport reconstruct_symbol(
    const std::function<TestFn(const TestFn&)>& K,
    const std::vector<TestFn>& probes);

/// Distance between two representations: atom weight mismatches plus sup
/// distance of matched density parts.
double representation_distance(const Distribution& f, const Distribution& g);

Distribution scale(const cplx& c, const Distribution& f);

}  // namespace polycalc
