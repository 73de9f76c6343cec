#pragma once

// Two-qubit density matrix <-> Mueller matrix conversion, X-state canonical
// form, positivity conditions, and conditional states of B-side measurements.
//
// Conventions: rho = (1/4) sum_ab M_ab sigma_a (x) sigma_b^*, with the
// conjugate on the B factor; measurement elements carry the same conjugate.
// See docs/stokes-conventions.md for the explicit 16-entry dictionary.

#include <array>

#include "qcorr/linalg.hpp"

namespace qcorr {

// Four-vector representation of a 2x2 positive matrix in the Pauli basis.
struct StokesVector {
    std::array<double, 4> s{};

    double& operator[](int i) { return s[static_cast<size_t>(i)]; }
    double operator[](int i) const { return s[static_cast<size_t>(i)]; }

    // Positive branch of the solid light cone.
    bool in_light_cone(double tol = kDefaultTol) const {
        return s[0] > 0.0 &&
               s[0] * s[0] - s[1] * s[1] - s[2] * s[2] - s[3] * s[3] >= -tol;
    }
};

// 4x4 real map on Stokes vectors induced by a two-qubit state.
struct MuellerMatrix {
    std::array<std::array<double, 4>, 4> m{};

    double& operator()(int a, int b) { return m[static_cast<size_t>(a)][static_cast<size_t>(b)]; }
    double operator()(int a, int b) const {
        return m[static_cast<size_t>(a)][static_cast<size_t>(b)];
    }

    StokesVector apply(const StokesVector& in) const;
    // Measurements on the A side see the transposed map.
    MuellerMatrix transposed() const;
    double det() const;
};

// Canonical five-parameter X-state family (phases stripped, gauge fixed).
struct XStateCanonical {
    double m11 = 0.0;
    double m22 = 0.0;
    double m33 = 0.0;
    double m03 = 0.0;
    double m30 = 0.0;
};

// Spectral data of a canonical X-state.
struct XStateEigensystem {
    std::array<double, 4> lambda{}; // ordering: (00/11 block +,-) then (01/10 block +,-)
    double nu1 = 0.0, nu2 = 0.0;
    double c_alpha = 0.0, s_alpha = 0.0;
    double c_beta = 0.0, s_beta = 0.0;
};

struct XCanonicalResult {
    XStateCanonical x;
    double phi1 = 0.0; // phase removed from rho_12
    double phi2 = 0.0; // phase removed from rho_03
};

// M_ab = Tr[rho (sigma_a (x) sigma_b^*)]; m00 = 1 for a unit-trace state.
MuellerMatrix rho_to_mueller(const DensityMatrix& rho);

// Inverse of rho_to_mueller; throws NotPositiveError when M is not the
// Mueller matrix of a physical state.
DensityMatrix mueller_to_rho(const MuellerMatrix& m, double tol = kDefaultTol);

// Strips the off-diagonal phases of an X-shaped state by diagonal local
// unitaries and fixes the sign gauge (see canonical_gauge). Throws
// NotXStateError if any off-X entry exceeds x_tol.
XCanonicalResult xstate_canonical(const DensityMatrix& rho, double x_tol = 1e-9);

// Deterministic sign/axis gauge: |m11| >= |m22|, m11 >= 0,
// m33 - m03*m30 >= 0, and center coordinate m30 - m03*m33 >= 0.
// Realized by the local unitary conjugations
//   z-rotation by pi/2 on both sides   : m11 <-> m22
//   sigma1 (x) sigma0                  : flips (m22, m30, m33)
//   sigma3 (x) sigma0                  : flips (m11, m22)
//   sigma1 (x) sigma1                  : flips (m03, m30)
// applied in that order.
XStateCanonical canonical_gauge(const XStateCanonical& x);

// Both block positivity conditions of the canonical X-state.
bool xstate_positivity(const XStateCanonical& x, double tol = kDefaultTol);

struct ConditionalState {
    double probability;          // Tr(rho Pi) for a unit-normalized element
    std::array<double, 3> bloch; // normalized A-side Bloch vector
};

// Output state of A after measuring the element with Stokes vector s_in on B.
ConditionalState conditional_state(const MuellerMatrix& m, const StokesVector& s_in,
                                   double tol = kDefaultTol);

// Closed-form spectral resolution of a canonical X-state.
XStateEigensystem xstate_eigensystem(const XStateCanonical& x);

// I = S2(|m30|) + S2(|m03|) - S({lambda_j}), in bits.
double mutual_information(const XStateCanonical& x);

// Helpers shared across modules.
MuellerMatrix mueller_of_x(const XStateCanonical& x);
XStateCanonical x_of_mueller(const MuellerMatrix& m, double x_tol = 1e-9);
DensityMatrix rho_of_x(const XStateCanonical& x, double tol = kDefaultTol);

} // namespace qcorr
