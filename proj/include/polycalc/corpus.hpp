#pragma once

#include <string>
#include <vector>

#include "polycalc/distribution.hpp"
#include "polycalc/testfn.hpp"

namespace polycalc {

/// The fixed test corpus: every pairwise combination has a closed-form or
/// brute-force oracle.
struct Corpus {
  GridPtr grid;
  std::vector<std::pair<std::string, TestFn>> phis;
  std::vector<std::pair<std::string, Distribution>> fs;
  std::vector<double> shifts;   // {0, 0.3, 1}
  std::vector<cplx> lambdas;    // {0.5, 1, 2} x {1 +- i}
  bool atoms_only = false;
};

Corpus build_corpus(GridPtr grid, bool atoms_only = false);

/// phi vanishing at the support edge (safe against derivative atoms at 0).
bool boundary_safe_phi(const std::string& name);

/// f whose derivative stays in the representation (no edge boundary term).
bool derivative_safe_f(const std::string& name);

}  // namespace polycalc
