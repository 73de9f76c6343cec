#include "qcorr/mueller.hpp"

#include <cmath>

namespace qcorr {

namespace {

// Pauli matrices sigma_0..sigma_3.
ComplexMatrix pauli(int k) {
    ComplexMatrix s(2, 2);
    switch (k) {
        case 0: s(0, 0) = 1.0; s(1, 1) = 1.0; break;
        case 1: s(0, 1) = 1.0; s(1, 0) = 1.0; break;
        case 2: s(0, 1) = Complex(0.0, -1.0); s(1, 0) = Complex(0.0, 1.0); break;
        case 3: s(0, 0) = 1.0; s(1, 1) = -1.0; break;
        default: throw DomainError("pauli index out of range");
    }
    return s;
}

ComplexMatrix pauli_conj(int k) {
    ComplexMatrix s = pauli(k);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) s(r, c) = std::conj(s(r, c));
    return s;
}

ComplexMatrix kron2(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(4, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

} // namespace

StokesVector MuellerMatrix::apply(const StokesVector& in) const {
    StokesVector out;
    for (int a = 0; a < 4; ++a) {
        double v = 0.0;
        for (int b = 0; b < 4; ++b) v += (*this)(a, b) * in[b];
        out[a] = v;
    }
    return out;
}

MuellerMatrix MuellerMatrix::transposed() const {
    MuellerMatrix out;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) out(a, b) = (*this)(b, a);
    return out;
}

double MuellerMatrix::det() const {
    // Laplace expansion along the first row; 4x4 only.
    auto det3 = [](const double d[3][3]) {
        return d[0][0] * (d[1][1] * d[2][2] - d[1][2] * d[2][1]) -
               d[0][1] * (d[1][0] * d[2][2] - d[1][2] * d[2][0]) +
               d[0][2] * (d[1][0] * d[2][1] - d[1][1] * d[2][0]);
    };
    double total = 0.0;
    for (int col = 0; col < 4; ++col) {
        double minor[3][3];
        for (int r = 1; r < 4; ++r) {
            int cc = 0;
            for (int c = 0; c < 4; ++c) {
                if (c == col) continue;
                minor[r - 1][cc++] = (*this)(r, c);
            }
        }
        const double sign = (col % 2 == 0) ? 1.0 : -1.0;
        total += sign * (*this)(0, col) * det3(minor);
    }
    return total;
}

MuellerMatrix rho_to_mueller(const DensityMatrix& rho) {
    if (rho.dim() != 4) throw InvalidStateError("rho_to_mueller expects a two-qubit state");
    MuellerMatrix m;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const ComplexMatrix basis = kron2(pauli(a), pauli_conj(b));
            Complex t = 0.0;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) t += rho(r, c) * basis(c, r);
            m(a, b) = t.real();
        }
    return m;
}

DensityMatrix mueller_to_rho(const MuellerMatrix& m, double tol) {
    ComplexMatrix rho(4, 4);
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            if (m(a, b) == 0.0) continue;
            const ComplexMatrix basis = kron2(pauli(a), pauli_conj(b));
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c) rho(r, c) += 0.25 * m(a, b) * basis(r, c);
        }
    try {
        return DensityMatrix(rho, tol);
    } catch (const NotPositiveError&) {
        throw NotPositiveError("mueller_to_rho: map is not a physical state");
    }
}

XCanonicalResult xstate_canonical(const DensityMatrix& rho, double x_tol) {
    if (rho.dim() != 4) throw InvalidStateError("xstate_canonical expects a two-qubit state");
    static const int off_x[8][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 3}, {2, 0}, {2, 3}, {3, 1}, {3, 2}};
    for (const auto& idx : off_x)
        if (std::abs(rho(idx[0], idx[1])) > x_tol)
            throw NotXStateError("off-X entry above tolerance");

    XCanonicalResult res;
    res.phi2 = std::arg(rho(0, 3));
    res.phi1 = std::arg(rho(1, 2));
    const double r00 = rho(0, 0).real();
    const double r11 = rho(1, 1).real();
    const double r22 = rho(2, 2).real();
    const double r33 = rho(3, 3).real();
    const double r03 = std::abs(rho(0, 3));
    const double r12 = std::abs(rho(1, 2));
    if (r03 < x_tol) res.phi2 = 0.0;
    if (r12 < x_tol) res.phi1 = 0.0;

    XStateCanonical x;
    x.m11 = 2.0 * (r03 + r12);
    x.m22 = 2.0 * (r03 - r12);
    x.m03 = r00 + r22 - (r11 + r33);
    x.m33 = r00 + r33 - (r11 + r22);
    x.m30 = r00 + r11 - (r22 + r33);
    res.x = canonical_gauge(x);
    return res;
}

XStateCanonical canonical_gauge(const XStateCanonical& in) {
    XStateCanonical x = in;
    if (std::abs(x.m22) > std::abs(x.m11)) std::swap(x.m11, x.m22);
    if (x.m33 - x.m03 * x.m30 < 0.0) { // sigma1 (x) sigma0
        x.m22 = -x.m22;
        x.m30 = -x.m30;
        x.m33 = -x.m33;
    }
    if (x.m11 < 0.0) { // sigma3 (x) sigma0
        x.m11 = -x.m11;
        x.m22 = -x.m22;
    }
    if (x.m30 - x.m03 * x.m33 < 0.0) { // sigma1 (x) sigma1
        x.m03 = -x.m03;
        x.m30 = -x.m30;
    }
    return x;
}

bool xstate_positivity(const XStateCanonical& x, double tol) {
    const double lhs1 = (1.0 + x.m33) * (1.0 + x.m33) - (x.m30 + x.m03) * (x.m30 + x.m03);
    const double rhs1 = (x.m11 + x.m22) * (x.m11 + x.m22);
    const double lhs2 = (1.0 - x.m33) * (1.0 - x.m33) - (x.m30 - x.m03) * (x.m30 - x.m03);
    const double rhs2 = (x.m11 - x.m22) * (x.m11 - x.m22);
    return lhs1 >= rhs1 - tol && lhs2 >= rhs2 - tol;
}

ConditionalState conditional_state(const MuellerMatrix& m, const StokesVector& s_in,
                                   double tol) {
    if (!s_in.in_light_cone(tol))
        throw DomainError("conditional_state: input outside the positive light cone");
    const StokesVector out = m.apply(s_in);
    if (out[0] < tol)
        throw DegenerateOutcomeError("conditional_state: zero-probability branch");
    ConditionalState cs;
    cs.probability = out[0] / 2.0;
    cs.bloch = {out[1] / out[0], out[2] / out[0], out[3] / out[0]};
    return cs;
}

XStateEigensystem xstate_eigensystem(const XStateCanonical& x) {
    XStateEigensystem e;
    const double rp = std::sqrt((x.m11 + x.m22) * (x.m11 + x.m22) +
                                (x.m30 + x.m03) * (x.m30 + x.m03));
    const double rm = std::sqrt((x.m11 - x.m22) * (x.m11 - x.m22) +
                                (x.m30 - x.m03) * (x.m30 - x.m03));
    e.nu1 = rp > 0.0 ? (x.m30 + x.m03) / rp : 1.0;
    e.nu2 = rm > 0.0 ? (x.m30 - x.m03) / rm : 1.0;
    e.lambda[0] = (1.0 + x.m33 + rp) / 4.0;
    e.lambda[3] = (1.0 + x.m33 - rp) / 4.0;
    e.lambda[1] = (1.0 - x.m33 + rm) / 4.0;
    e.lambda[2] = (1.0 - x.m33 - rm) / 4.0;
    e.c_alpha = std::sqrt(0.5 * (1.0 + e.nu1));
    e.s_alpha = std::sqrt(std::max(0.0, 0.5 * (1.0 - e.nu1)));
    e.c_beta = std::sqrt(0.5 * (1.0 + e.nu2));
    e.s_beta = std::sqrt(std::max(0.0, 0.5 * (1.0 - e.nu2)));
    return e;
}

double mutual_information(const XStateCanonical& x) {
    const XStateEigensystem e = xstate_eigensystem(x);
    double s_ab = 0.0;
    for (double lam : e.lambda)
        if (lam > kEntropyFloor) s_ab -= lam * std::log2(lam);
    return binary_entropy(std::abs(x.m30)) + binary_entropy(std::abs(x.m03)) - s_ab;
}

MuellerMatrix mueller_of_x(const XStateCanonical& x) {
    MuellerMatrix m;
    m(0, 0) = 1.0;
    m(1, 1) = x.m11;
    m(2, 2) = x.m22;
    m(3, 3) = x.m33;
    m(0, 3) = x.m03;
    m(3, 0) = x.m30;
    return m;
}

XStateCanonical x_of_mueller(const MuellerMatrix& m, double x_tol) {
    if (std::abs(m(0, 0) - 1.0) > x_tol)
        throw NotXStateError("x_of_mueller: matrix not normalized to m00 = 1");
    static const int off[10][2] = {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {1, 3},
                                   {2, 0}, {2, 1}, {2, 3}, {3, 1}, {3, 2}};
    for (const auto& idx : off)
        if (std::abs(m(idx[0], idx[1])) > x_tol)
            throw NotXStateError("x_of_mueller: entry outside the sub-X pattern");
    XStateCanonical x;
    x.m11 = m(1, 1);
    x.m22 = m(2, 2);
    x.m33 = m(3, 3);
    x.m03 = m(0, 3);
    x.m30 = m(3, 0);
    return x;
}

DensityMatrix rho_of_x(const XStateCanonical& x, double tol) {
    return mueller_to_rho(mueller_of_x(x), tol);
}

} // namespace qcorr
