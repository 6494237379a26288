#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "polycalc/common.hpp"
#include "polycalc/grid.hpp"

namespace polycalc {

enum class DecayTag { exponential, gaussian, compact, unknown };

std::string to_string(DecayTag d);
DecayTag decay_tag_from_string(const std::string& s);

/// Default relative tail threshold for the decay check. Violations are
/// warnings carried in metadata, never hard errors.
constexpr double kDecayTol = 1e-6;

/// A rapidly decreasing function on [0, t_max], sampled on a quadrature grid.
struct TestFn {
  GridPtr grid;
  std::vector<cplx> values;
  DecayTag decay_tag = DecayTag::unknown;
  Metadata metadata;

  std::size_t size() const { return values.size(); }

  /// Content hash of the sample values (canonical-ordering key).
  std::uint64_t content_hash() const;

  double max_abs() const;
};

/// Sample a scalar expression on the grid. Throws sampling_error on
/// non-finite values; runs the tail-decay check into metadata.
TestFn sample(const std::function<cplx(double)>& expr, GridPtr grid,
              DecayTag tag = DecayTag::unknown);

/// Local 4-point Lagrange (cubic) interpolation at x. Exact on grid nodes;
/// 0 beyond t_max (the configured tail model).
cplx value_at(const TestFn& fn, double x);

/// phi(t) -> phi(t + s), s >= 0. Values past t_max extrapolate to 0; the
/// discarded tail magnitude is recorded in metadata.truncation_bound.
TestFn shift_fn(const TestFn& fn, double s);

/// Numerical derivative: 5-node Fornberg stencils, 4th order on uniform
/// grids. Stencils are widened to span at least `min_span` so repeated
/// differentiation is not destroyed by roundoff on locally fine grids.
TestFn diff_fn(const TestFn& fn, double min_span = 0.02);

/// Quadrature sum of the samples.
cplx integrate(const TestFn& fn);

/// Pointwise algebra on a shared grid.
TestFn operator+(const TestFn& a, const TestFn& b);
TestFn operator-(const TestFn& a, const TestFn& b);
TestFn operator*(const cplx& c, const TestFn& a);
TestFn pointwise_mul(const TestFn& a, const TestFn& b);

double sup_distance(const TestFn& a, const TestFn& b);

/// m-th derivative evaluated at a point (repeated diff_fn + interpolation).
cplx derivative_at(const TestFn& fn, int order, double x);

/// Largest node spacing where the samples still carry mass (>= cutoff of
/// the peak). Oscillation that is only under-resolved outside this region
/// is bounded by the amplitude there.
double live_spacing(const TestFn& fn, double cutoff = 1e-3);

/// One-sided derivatives phi^(k)(0), k = 0..K, from the first nodes.
std::vector<cplx> boundary_derivatives(const TestFn& fn, int K);

/// Fornberg finite-difference weights for the M-th derivative at x0 on
/// arbitrary nodes xs.
std::vector<double> fornberg_weights(double x0, const std::vector<double>& xs,
                                     int M);

}  // namespace polycalc
