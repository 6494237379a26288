#pragma once

#include <string>

#include "polycalc/distribution.hpp"
#include "polycalc/fock.hpp"
#include "polycalc/opcalc.hpp"
#include "polycalc/testfn.hpp"
#include "polycalc/transforms.hpp"

namespace polycalc::io {

/// TestFn: CSV `t,re,im` plus a JSON sidecar (same path with .json) holding
/// {n_points, t_max, rule, decay_tag}.
void write_testfn(const TestFn& fn, const std::string& csv_path);
TestFn read_testfn(const std::string& csv_path);

/// Distribution: JSON {atoms: [{a, m, re, im}], density: <csv ref|null>}.
/// Regular parts are written next to the JSON as <stem>_part<k>.csv with
/// their support offsets.
void write_distribution(const Distribution& f, const std::string& json_path);
Distribution read_distribution(const std::string& json_path);

/// FreqFn: CSV `xi,re,im`.
void write_freqfn(const FreqFn& fn, const std::string& csv_path);

/// PolyTest: JSON manifest referencing one TestFn CSV per distinct factor.
void write_poly_test(const PolyTest& p, const std::string& json_path);

/// PolyDist: JSON manifest referencing one Distribution JSON per distinct
/// base or factor.
void write_poly_dist(const PolyDist& f, const std::string& json_path);

/// FockState: one CSV per component, `xi1[,xi2[,xi3]],re,im`, plus a JSON
/// manifest {N, L, nodes_per_axis, components}.
void write_fock_state(const FockState& y, const std::string& manifest_path);

std::string format_double(double v);

}  // namespace polycalc::io
