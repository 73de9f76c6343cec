#pragma once

// Shared generators and small oracles for the test suites.

#include <cmath>
#include <random>

#include "qcorr/linalg.hpp"
#include "qcorr/mueller.hpp"

namespace qcorr::test {

// Positive X-state density matrix: Dirichlet diagonal plus coherences bounded
// by the block positivity conditions, with random phases.
inline DensityMatrix random_x_rho(std::mt19937_64& rng, bool with_phases = true) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double g[4];
    double sum = 0.0;
    for (double& v : g) {
        v = -std::log(u(rng) + 1e-300);
        sum += v;
    }
    const double p00 = g[0] / sum, p11 = g[1] / sum, p22 = g[2] / sum, p33 = g[3] / sum;
    const double r03 = u(rng) * std::sqrt(p00 * p33) * 0.999;
    const double r12 = u(rng) * std::sqrt(p11 * p22) * 0.999;
    const double ph2 = with_phases ? u(rng) * 2.0 * M_PI : 0.0;
    const double ph1 = with_phases ? u(rng) * 2.0 * M_PI : 0.0;
    ComplexMatrix rho(4, 4);
    rho(0, 0) = p00;
    rho(1, 1) = p11;
    rho(2, 2) = p22;
    rho(3, 3) = p33;
    rho(0, 3) = r03 * std::exp(Complex(0.0, ph2));
    rho(3, 0) = std::conj(rho(0, 3));
    rho(1, 2) = r12 * std::exp(Complex(0.0, ph1));
    rho(2, 1) = std::conj(rho(1, 2));
    return DensityMatrix(rho);
}

inline XStateCanonical random_x_state(std::mt19937_64& rng) {
    return xstate_canonical(random_x_rho(rng)).x;
}

// Haar-like random pure two-qubit state.
inline DensityMatrix random_pure_two_qubit(std::mt19937_64& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Complex amp[4];
    double norm = 0.0;
    for (Complex& a : amp) {
        a = Complex(n(rng), n(rng));
        norm += std::norm(a);
    }
    norm = std::sqrt(norm);
    ComplexMatrix rho(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) rho(i, j) = amp[i] * std::conj(amp[j]) / (norm * norm);
    return DensityMatrix(rho);
}

inline DensityMatrix bell_psi_plus() {
    ComplexMatrix rho(4, 4);
    rho(0, 0) = rho(0, 3) = rho(3, 0) = rho(3, 3) = 0.5;
    return DensityMatrix(rho);
}

// The worked reference X-state used across the suites.
inline XStateCanonical reference_x_state() {
    XStateCanonical x;
    x.m11 = 0.76;
    x.m22 = 0.6;
    x.m33 = 0.8;
    x.m03 = 0.23;
    x.m30 = 0.3;
    return x;
}

} // namespace qcorr::test
