#pragma once

// Brute-force verification paths, deliberately independent of the geometric
// solver: measurement averages are evaluated through the Stokes map alone.
// Used by the `verify` command and by the test suites.

#include "qcorr/ellipsoid.hpp"
#include "qcorr/mueller.hpp"

namespace qcorr {

// Average conditional entropy of an explicit POVM, via conditional_state.
double povm_average_entropy(const MuellerMatrix& m,
                            const std::vector<std::pair<double, StokesVector>>& povm);

// Exhaustive minimum of the average conditional entropy over the z-top
// three-element schemes on a theta grid (plus both von Neumann projections),
// with golden-section refinement around the best grid point.
double brute_force_sa_min(const XStateCanonical& x, int grid_points = 10000);

} // namespace qcorr
