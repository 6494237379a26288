#pragma once

#include <vector>

#include "polycalc/common.hpp"
#include "polycalc/testfn.hpp"

namespace polycalc::kernels {

/// The data-parallel inner loops of the library. Each kernel has a serial
/// reference implementation (bitwise deterministic, used when the thread
/// count is 1) and an OpenMP implementation partitioned over independent
/// output elements. Dispatch follows par::enabled().

/// (rho ⋆ phi)(s_k) = int base(tau) * phi(tau + offset + s_k) dtau for every
/// grid node s_k.
std::vector<cplx> cross_correlate_density(const TestFn& base, double offset,
                                          const TestFn& phi);
std::vector<cplx> cross_correlate_density_serial(const TestFn& base,
                                                 double offset,
                                                 const TestFn& phi);

/// (rho1 * rho2)(s_k) = int_0^{s_k} rho1(tau) rho2(s_k - tau) dtau on every
/// grid node, via an exponentially mapped sub-rule per output node.
std::vector<cplx> density_convolve(const TestFn& rho1, const TestFn& rho2,
                                   std::size_t subrule_points = 128);
std::vector<cplx> density_convolve_serial(const TestFn& rho1,
                                          const TestFn& rho2,
                                          std::size_t subrule_points = 128);

/// F(xi_k) = sum_i w_i exp(-i t_i xi_k) v_i over a list of frequencies.
std::vector<cplx> oscillatory_transform(const TestFn& fn,
                                        const std::vector<double>& xi);
std::vector<cplx> oscillatory_transform_serial(const TestFn& fn,
                                               const std::vector<double>& xi);

}  // namespace polycalc::kernels
