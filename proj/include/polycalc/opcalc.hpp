#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "polycalc/common.hpp"
#include "polycalc/fock.hpp"
#include "polycalc/testfn.hpp"

namespace polycalc {

/// Flat index block for degree n: [n(n-1)/2 + 1, n(n+1)/2] (1-based).
/// n = 0 returns the empty block (1, 0).
std::pair<long, long> block_indices(long n);

/// Uniform periodic grid on [-L, L) per axis, nodes_per_axis a power of two.
struct SpatialGrid {
  double L = 12.0;
  std::size_t nodes = 512;

  double spacing() const { return 2.0 * L / static_cast<double>(nodes); }
  double axis_node(std::size_t i) const {
    return -L + spacing() * static_cast<double>(i);
  }
  /// FFT wavenumber of mode m.
  double wavenumber(std::size_t m) const {
    const long half = static_cast<long>(nodes) / 2;
    long mm = static_cast<long>(m);
    if (mm >= half) mm -= static_cast<long>(nodes);
    return kPi / L * static_cast<double>(mm);
  }
};

using SpatialGridPtr = std::shared_ptr<const SpatialGrid>;

/// Truncated symmetric Fock state: y0 plus components y_n on [-L, L)^n for
/// 1 <= n <= max_degree. Component n may use its own axis resolution.
struct FockState {
  cplx y0{0.0, 0.0};
  int max_degree = 0;
  std::vector<SpatialGridPtr> grids;        // grids[n-1]
  std::vector<std::vector<cplx>> comps;     // comps[n-1], size nodes^n

  static FockState scalar(cplx y0);
  static FockState zeros_like(const FockState& y);

  bool is_scalar_mode() const { return max_degree == 0; }
  std::size_t component_size(int n) const;
};

double norm(const FockState& y);
FockState axpy(const cplx& a, const FockState& x, const FockState& y);
FockState scale_state(const cplx& a, const FockState& y);
double state_distance(const FockState& a, const FockState& b);

/// Permutation symmetry of every component (type invariant of the
/// symmetric Fock space); returns the largest violation.
double symmetry_defect(const FockState& y);

enum class GenKind { scalar, second_derivative };

/// One marginal generator: either lambda*I (semigroup e^{-i t lambda} I)
/// or the second-derivative operator at a flat coordinate index, acting on
/// the component that owns the coordinate (identity elsewhere).
struct Generator1D {
  GenKind kind = GenKind::scalar;
  cplx lambda{0.0, 0.0};
  long coordinate = 0;  // 1-based flat index (second_derivative)

  static Generator1D scalar_gen(cplx lambda);
  static Generator1D second_derivative(long flat_coordinate);

  int block() const;       // component n owning the coordinate
  int local_axis() const;  // 0-based axis within that component

  /// e^{-i t A} y. strict_alias gates pointwise fidelity: if the multiplier
  /// phase step at the occupied band exceeds pi, the wrapped solution is no
  /// longer a faithful sample of the continuum orbit.
  FockState apply_semigroup(double t, const FockState& y,
                            bool strict_alias = true) const;

  /// True when the multiplier at time t is under-resolved on the modes the
  /// state actually occupies.
  bool aliased(double t, const FockState& y) const;
};

/// Countable generator system truncated at max_degree: block n holds n
/// commuting marginals (flat indices b_n..e_n).
struct GeneratorSystem {
  std::vector<std::vector<Generator1D>> blocks;  // blocks[n-1] has n entries

  int max_degree() const { return static_cast<int>(blocks.size()); }
  static GeneratorSystem scalars(const std::vector<cplx>& flat_lambdas);
  static GeneratorSystem gaussian(int N);  // D^2 system of the Fock example

  /// Numeric commutation defect of every block on a probe state.
  double commutation_defect(const FockState& probe, double t = 0.37) const;
};

/// Bochner integral int phi(t) e^{-i t A} y dt as a weighted sum of
/// semigroup orbits on phi's grid. Aliased nodes are admitted only while
/// their quadrature weight is negligible.
FockState marginal_apply(const TestFn& phi, const Generator1D& A,
                         const FockState& y);

/// The lifted symbol: a graded map (block, state) -> state.
struct OperatorFn {
  PolyTest symbol;

  /// Action of the degree-n piece through the system's block n.
  FockState degree_apply(int n, const GeneratorSystem& A,
                         const FockState& y) const;
  FockState apply(const GeneratorSystem& A, const FockState& y) const;
};

OperatorFn lift(const PolyTest& p);

/// y' = p_0 y + sum_n p~_n(A_n) y, each rank-1 term evaluated as the
/// composition of commuting 1-D marginal quadratures.
FockState calculus_apply(const PolyTest& p, const GeneratorSystem& A,
                         const FockState& y);

/// T~_s: the operator-side shift, realized on symbols.
FockState opshift_apply(const PolyTest& p, double s, const GeneratorSystem& A,
                        const FockState& y);

/// Phi_F: the functional calculus in the polynomial distribution algebra.
FockState phi_apply(const PolyDist& F, const PolyTest& p,
                    const GeneratorSystem& A, const FockState& y);

/// Gaussian semigroup e^{-i t . D^2_n} on component n = t.size() via the
/// unimodular Fourier multiplier e^{+i t_j k_j^2} per coordinate.
FockState gaussian_apply(const std::vector<double>& t, const FockState& y);

struct ContractionReport {
  double max_ratio = 0.0;
  std::vector<std::pair<double, double>> violations;  // (t, ratio)
  bool contractive(double slack = 1e-10) const {
    return max_ratio <= 1.0 + slack;
  }
};

/// max over t samples and probes of ||e^{-itA} v|| / ||v||.
ContractionReport contraction_report(const Generator1D& A,
                                     const std::vector<double>& t_samples,
                                     const std::vector<FockState>& probes);

/// Fock states for tests and demos: component n carries the product
/// Gaussian prod_j exp(-xi_j^2 / (2 width^2)).
FockState gaussian_state(const std::vector<SpatialGridPtr>& grids, int N,
                         double width = 1.0);

/// Deterministic pseudo-random state (fixed LCG seed), symmetrized.
FockState random_state(const std::vector<SpatialGridPtr>& grids, int N,
                       std::uint64_t seed);

}  // namespace polycalc
