#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qcorr/linalg.hpp"

using namespace qcorr;

namespace {
// Frozen with an independent high-precision evaluation of -sum p log2 p.
constexpr double kEntropyQuarter = 0.811278124459133;
}

TEST_CASE("herm_eigvals basics") {
    CHECK(herm_eigvals(ComplexMatrix::identity(2)) == std::vector<double>{1.0, 1.0});

    ComplexMatrix d(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = -1.0;
    const auto eig = herm_eigvals(d);
    CHECK(eig[0] == doctest::Approx(-1.0));
    CHECK(eig[1] == doctest::Approx(3.0));

    const auto bell = herm_eigvals(test::bell_psi_plus().mat());
    CHECK(bell[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bell[2] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(bell[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("herm_eigvals error paths") {
    ComplexMatrix nh(2, 2);
    nh(0, 1) = 1.0; // not hermitian
    CHECK_THROWS_AS(herm_eigvals(nh), NonHermitianError);

    ComplexMatrix inf(2, 2);
    inf(0, 0) = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(herm_eigvals(inf), NonFiniteError);

    CHECK_THROWS_AS(herm_eigvals(ComplexMatrix::identity(17)), DimensionError);
}

TEST_CASE("herm_eigvals random hermitian cross-check") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> n(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 2 + static_cast<int>(rng() % 7);
        ComplexMatrix h(dim, dim);
        for (int r = 0; r < dim; ++r) {
            h(r, r) = n(rng);
            for (int c = r + 1; c < dim; ++c) {
                h(r, c) = Complex(n(rng), n(rng));
                h(c, r) = std::conj(h(r, c));
            }
        }
        const auto eig = herm_eigvals(h);
        // Trace and Frobenius norm are eigenvalue invariants.
        double tr = 0.0, frob = 0.0, sum = 0.0, sq = 0.0;
        for (int r = 0; r < dim; ++r) {
            tr += h(r, r).real();
            for (int c = 0; c < dim; ++c) frob += std::norm(h(r, c));
        }
        for (double lam : eig) {
            sum += lam;
            sq += lam * lam;
        }
        CHECK(sum == doctest::Approx(tr).epsilon(1e-11));
        CHECK(sq == doctest::Approx(frob).epsilon(1e-11));
    }
}

TEST_CASE("von Neumann entropy") {
    ComplexMatrix pure(2, 2);
    pure(0, 0) = 1.0;
    CHECK(von_neumann_entropy(DensityMatrix(pure)) == doctest::Approx(0.0).epsilon(1e-14));

    ComplexMatrix mixed(2, 2);
    mixed(0, 0) = mixed(1, 1) = 0.5;
    CHECK(von_neumann_entropy(DensityMatrix(mixed)) == doctest::Approx(1.0).epsilon(1e-14));

    ComplexMatrix q(2, 2);
    q(0, 0) = 0.75;
    q(1, 1) = 0.25;
    CHECK(von_neumann_entropy(DensityMatrix(q)) ==
          doctest::Approx(kEntropyQuarter).epsilon(1e-13));
}

TEST_CASE("binary entropy") {
    CHECK(binary_entropy(0.0) == doctest::Approx(1.0));
    CHECK(binary_entropy(1.0) == doctest::Approx(0.0));
    CHECK(binary_entropy(0.5) == doctest::Approx(kEntropyQuarter).epsilon(1e-13));
    CHECK_THROWS_AS(binary_entropy(1.5), DomainError);
    CHECK_THROWS_AS(binary_entropy(-0.2), DomainError);
}

TEST_CASE("entropy matches Bloch-radius formula on random qubits") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        double a[3];
        double norm2 = 2.0;
        while (norm2 > 1.0) {
            for (double& v : a) v = u(rng);
            norm2 = a[0] * a[0] + a[1] * a[1] + a[2] * a[2];
        }
        ComplexMatrix rho(2, 2);
        rho(0, 0) = 0.5 * (1.0 + a[2]);
        rho(1, 1) = 0.5 * (1.0 - a[2]);
        rho(0, 1) = 0.5 * Complex(a[0], -a[1]);
        rho(1, 0) = std::conj(rho(0, 1));
        CHECK(std::abs(von_neumann_entropy(DensityMatrix(rho)) -
                       binary_entropy(std::sqrt(norm2))) < 1e-10);
    }
}

TEST_CASE("partial trace") {
    // Product state: reductions recover the factors.
    ComplexMatrix rho(4, 4);
    const double pa = 0.7, pb = 0.4;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const double va = i == 0 ? pa : 1.0 - pa;
            const double vb = j == 0 ? pb : 1.0 - pb;
            rho(2 * i + j, 2 * i + j) = va * vb;
        }
    const DensityMatrix full(rho);
    const DensityMatrix ra = partial_trace(full, 2, 2, Subsystem::B);
    CHECK(ra(0, 0).real() == doctest::Approx(pa).epsilon(1e-14));
    const DensityMatrix rb = partial_trace(full, 2, 2, Subsystem::A);
    CHECK(rb(0, 0).real() == doctest::Approx(pb).epsilon(1e-14));
    // Block-sum oracle for the diagonal case: first entry is p00 + p10.
    CHECK(rb(0, 0).real() ==
          doctest::Approx(rho(0, 0).real() + rho(2, 2).real()).epsilon(1e-14));

    // Bell state reduces to the maximally mixed qubit.
    const DensityMatrix bell_a = partial_trace(test::bell_psi_plus(), 2, 2, Subsystem::B);
    CHECK(bell_a(0, 0).real() == doctest::Approx(0.5));
    CHECK(std::abs(bell_a(0, 1)) < 1e-14);
    CHECK(von_neumann_entropy(bell_a) == doctest::Approx(1.0));

    CHECK_THROWS_AS(partial_trace(full, 3, 2, Subsystem::B), DimensionError);
}

TEST_CASE("partial transpose") {
    const DensityMatrix bell = test::bell_psi_plus();
    const ComplexMatrix pt = partial_transpose(bell, Subsystem::B);
    // Swap structure of the block transpose.
    CHECK(pt(1, 2).real() == doctest::Approx(0.5));
    CHECK(std::abs(pt(0, 3)) < 1e-14);
    const auto eig = herm_eigvals(pt);
    CHECK(eig.front() == doctest::Approx(-0.5).epsilon(1e-12));

    // Diagonal states are unchanged.
    ComplexMatrix d(4, 4);
    d(0, 0) = 0.4;
    d(1, 1) = 0.3;
    d(2, 2) = 0.2;
    d(3, 3) = 0.1;
    const DensityMatrix diag(d);
    CHECK(partial_transpose(diag, Subsystem::B).max_abs_diff(d) == 0.0);

    // Involution, exactly.
    std::mt19937_64 rng(5);
    for (int i = 0; i < 25; ++i) {
        const DensityMatrix rho = test::random_x_rho(rng);
        const ComplexMatrix once = partial_transpose(rho, Subsystem::A);
        const ComplexMatrix twice = partial_transpose(DensityMatrix(once, 1.0), Subsystem::A);
        CHECK(twice.max_abs_diff(rho.mat()) == 0.0);
    }
}

TEST_CASE("ppt test") {
    const PptResult bell = ppt_entangled(test::bell_psi_plus());
    CHECK(bell.entangled);
    CHECK(bell.min_eigenvalue == doctest::Approx(-0.5).epsilon(1e-12));

    ComplexMatrix mixed(4, 4);
    for (int i = 0; i < 4; ++i) mixed(i, i) = 0.25;
    CHECK_FALSE(ppt_entangled(DensityMatrix(mixed)).entangled);

    // Half Bell, half maximally mixed: transpose spectrum is known in closed
    // form, {3/8, 3/8, 3/8, -1/8}.
    ComplexMatrix w(4, 4);
    for (int i = 0; i < 4; ++i) w(i, i) = 0.125;
    w(0, 0) = w(3, 3) = 0.125 + 0.25;
    w(0, 3) = w(3, 0) = 0.25;
    const PptResult werner = ppt_entangled(DensityMatrix(w));
    CHECK(werner.entangled);
    CHECK(werner.min_eigenvalue == doctest::Approx(-0.125).epsilon(1e-12));
}

TEST_CASE("density matrix validation and eigenvalue invariants") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 50; ++i) {
        const DensityMatrix rho = test::random_x_rho(rng);
        const auto eig = herm_eigvals(rho.mat());
        double sum = 0.0;
        for (double lam : eig) {
            CHECK(lam >= -1e-9);
            sum += lam;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }

    ComplexMatrix bad(2, 2);
    bad(0, 0) = 1.4;
    bad(1, 1) = -0.4;
    CHECK_THROWS_AS(DensityMatrix{bad}, NotPositiveError);

    ComplexMatrix trace_off(2, 2);
    trace_off(0, 0) = trace_off(1, 1) = 0.6;
    CHECK_THROWS_AS(DensityMatrix{trace_off}, InvalidStateError);
}

TEST_CASE("Schmidt symmetry of pure-state reductions") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 40; ++i) {
        const DensityMatrix psi = test::random_pure_two_qubit(rng);
        const double sa = von_neumann_entropy(partial_trace(psi, 2, 2, Subsystem::B));
        const double sb = von_neumann_entropy(partial_trace(psi, 2, 2, Subsystem::A));
        CHECK(std::abs(sa - sb) < 1e-9);
    }
}
