#include "polycalc/corpus.hpp"

#include <cmath>

namespace polycalc {

Corpus build_corpus(GridPtr grid, bool atoms_only) {
  Corpus c;
  c.grid = grid;
  c.atoms_only = atoms_only;
  c.phis.emplace_back(
      "exp", sample([](double t) { return std::exp(-t); }, grid,
                    DecayTag::exponential));
  c.phis.emplace_back(
      "t_exp", sample([](double t) { return t * std::exp(-t); }, grid,
                      DecayTag::exponential));
  c.phis.emplace_back(
      "t2_exp", sample([](double t) { return t * t * std::exp(-t); }, grid,
                       DecayTag::exponential));
  c.phis.emplace_back(
      "gauss", sample([](double t) { return std::exp(-t * t); }, grid,
                      DecayTag::gaussian));

  c.fs.emplace_back("unit", delta());
  c.fs.emplace_back("delta1", delta_at(1.0));
  c.fs.emplace_back("Ddelta", delta_at(0.0, 1));
  if (!atoms_only) {
    c.fs.emplace_back("dens_exp",
                      make_density(c.phis[0].second));  // e^{-t}
    c.fs.emplace_back("dens_t_exp",
                      make_density(c.phis[1].second));  // t e^{-t}
  }
  c.shifts = {0.0, 0.3, 1.0};
  for (double r : {0.5, 1.0, 2.0}) {
    c.lambdas.push_back(cplx{r, r});
    c.lambdas.push_back(cplx{r, -r});
  }
  return c;
}

bool boundary_safe_phi(const std::string& name) {
  return name == "t_exp" || name == "t2_exp";
}

bool derivative_safe_f(const std::string& name) {
  // dens_exp has e^{-t}(0) = 1: its derivative carries a boundary atom.
  return name != "dens_exp";
}

}  // namespace polycalc
