#pragma once

#include <memory>
#include <string>
#include <vector>

#include "polycalc/common.hpp"

namespace polycalc {

enum class QuadRule { trapezoid, gauss_laguerre_mapped };

std::string to_string(QuadRule r);
QuadRule quad_rule_from_string(const std::string& s);

/// Quadrature grid on the half-line. nodes[0] == 0, nodes strictly
/// increasing inside [0, t_max], weights positive.
///
/// trapezoid: uniform nodes on [0, t_max], composite trapezoid weights.
/// gauss_laguerre_mapped: Gauss-Legendre on u in [0,1] pushed through the
/// exponential map t = -alpha*log(1-u). Nodes cluster near 0 like a Laguerre
/// rule and the weights carry the full half-line measure, so integrals of
/// decaying functions are spectrally accurate including the tail beyond the
/// last node. alpha is the largest integer keeping all nodes <= t_max
/// (integer alpha makes the rule exact on pure exponentials).
struct Grid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double t_max = 0.0;
  QuadRule rule = QuadRule::trapezoid;
  double alpha = 0.0;  // map decay scale; 0 for trapezoid

  std::size_t size() const { return nodes.size(); }
  double spacing_after(std::size_t i) const { return nodes[i + 1] - nodes[i]; }
};

using GridPtr = std::shared_ptr<const Grid>;

/// Build a quadrature grid. n_points >= 8, t_max > 0.
GridPtr build_grid(std::size_t n_points, double t_max, QuadRule rule);

/// Gauss-Legendre nodes/weights on [0, 1] (Newton on the recurrence).
void gauss_legendre_01(std::size_t m, std::vector<double>& x,
                       std::vector<double>& w);

/// Exponentially mapped Gauss rule for integrals over [0, s] of functions
/// decaying on the scale alpha: t = s*(expm1(k u))/(expm1 k), k = s/alpha.
/// Used for sub-interval quadratures (density convolution, tail integrals).
void mapped_subrule(double s, double alpha, std::size_t m,
                    std::vector<double>& t, std::vector<double>& w);

}  // namespace polycalc
