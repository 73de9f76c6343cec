#include "verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qcorr/ellipsoid.hpp"
#include "qcorr/fock.hpp"
#include "qcorr/gaussian.hpp"
#include "qcorr/oracle.hpp"

namespace qcorr::cli {

namespace {

// Positive X-state sampled through its block decomposition.
XStateCanonical random_x_state(std::mt19937_64& rng) {
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
    XStateCanonical x;
    x.m11 = 2.0 * (r03 + r12);
    x.m22 = 2.0 * (r03 - r12);
    x.m03 = p00 + p22 - p11 - p33;
    x.m33 = p00 + p33 - p11 - p22;
    x.m30 = p00 + p11 - p22 - p33;
    return canonical_gauge(x);
}

} // namespace

std::vector<PropertyResult> run_kraus_suite(int n_cut) {
    std::vector<PropertyResult> out;
    {
        PropertyResult r{"atten-completeness-exact", true, 0, 0, 0.0};
        for (double kappa : {0.3, 0.72, 0.9, 1.0}) {
            const KrausFamily fam = build_kraus(KrausKind::Atten, kappa, n_cut, n_cut);
            const double deficit = kraus_completeness_deficit(fam, n_cut - 1);
            r.worst_error = std::max(r.worst_error, deficit);
            ++r.checked;
            if (deficit > 1e-12) {
                ++r.failures;
                r.passed = false;
            }
        }
        out.push_back(r);
    }
    {
        PropertyResult r{"amp-deficit-halfband", true, 0, 0, 0.0};
        for (double kappa : {1.02, 1.05}) {
            const KrausFamily fam = build_kraus(KrausKind::Amp, kappa, n_cut, n_cut);
            const double deficit = kraus_completeness_deficit(fam, n_cut / 2);
            r.worst_error = std::max(r.worst_error, deficit);
            ++r.checked;
            if (deficit > 1e-8) {
                ++r.failures;
                r.passed = false;
            }
        }
        out.push_back(r);
    }
    {
        PropertyResult r{"amp-deficit-decreasing", true, 0, 0, 0.0};
        for (double kappa : {1.05, 1.2}) {
            const double d1 = kraus_completeness_deficit(
                build_kraus(KrausKind::Amp, kappa, n_cut, n_cut), n_cut / 2);
            const double d2 = kraus_completeness_deficit(
                build_kraus(KrausKind::Amp, kappa, 2 * n_cut, 2 * n_cut), n_cut / 2);
            ++r.checked;
            if (!(d2 <= d1)) {
                ++r.failures;
                r.passed = false;
            }
            r.worst_error = std::max(r.worst_error, d2);
        }
        out.push_back(r);
    }
    return out;
}

std::vector<PropertyResult> run_semigroup_suite(int n_cut) {
    std::vector<PropertyResult> out;
    const int band = n_cut / 2;
    {
        PropertyResult r{"atten-semigroup", true, 0, 0, 0.0};
        for (int row = 0; row <= band; ++row)
            for (int d = 0; row + d <= band; ++d) {
                const FockOperator in = FockOperator::ketbra(row, row + d, n_cut);
                const FockOperator seq = apply_quantum_limited(
                    KrausKind::Atten, 0.9, apply_quantum_limited(KrausKind::Atten, 0.8, in));
                const FockOperator direct = apply_quantum_limited(KrausKind::Atten, 0.72, in);
                const double err = seq.mat.max_abs_diff(direct.mat);
                r.worst_error = std::max(r.worst_error, err);
                ++r.checked;
                if (err > 1e-10) {
                    ++r.failures;
                    r.passed = false;
                }
            }
        out.push_back(r);
    }
    {
        PropertyResult r{"amp-semigroup", true, 0, 0, 0.0};
        const int work = 2 * n_cut;
        for (int row = 0; row <= band; ++row)
            for (int d = 0; row + d <= band; ++d) {
                const FockOperator in = FockOperator::ketbra(row, row + d, work);
                FockOperator s1 = apply_quantum_limited(KrausKind::Amp, 1.2, in);
                FockOperator seq = apply_quantum_limited(KrausKind::Amp, 1.25, s1);
                FockOperator direct = apply_quantum_limited(KrausKind::Amp, 1.5, in);
                const int dim = std::min({seq.n_cut, direct.n_cut, n_cut});
                double err = 0.0;
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j)
                        err = std::max(err, std::abs(seq.mat(i, j) - direct.mat(i, j)));
                r.worst_error = std::max(r.worst_error, err);
                ++r.checked;
                if (err > 1e-10) {
                    ++r.failures;
                    r.passed = false;
                }
            }
        out.push_back(r);
    }
    {
        PropertyResult r{"noisy-three-way", true, 0, 0, 0.0};
        const double kappa = 0.8, a = 1.0;
        const QuantumLimitedPair pair = noisy_decomposition(NoisyKind::Atten, kappa, a);
        const KrausFamily famB = build_kraus(KrausKind::Atten, pair.kappa1, n_cut, n_cut);
        const KrausFamily famA = build_kraus(KrausKind::Amp, pair.kappa2, n_cut, n_cut);
        const std::vector<FockOperator> prods = compose_kraus_products(famA, famB);
        for (int m = 0; m <= band; m += 2)
            for (int n = 0; n <= band; n += 3) {
                const FockOperator in = FockOperator::ketbra(m, n, n_cut);
                const FockOperator closed = apply_noisy(NoisyKind::Atten, kappa, a, in);
                const FockOperator viaK = apply_kraus(prods, in);
                const FockOperator seq = apply_quantum_limited(
                    KrausKind::Amp, pair.kappa2,
                    apply_quantum_limited(KrausKind::Atten, pair.kappa1, in));
                const int dim = std::min({closed.n_cut, viaK.n_cut, seq.n_cut, 3 * n_cut / 4});
                double err = 0.0;
                for (int i = 0; i < dim; ++i)
                    for (int j = 0; j < dim; ++j)
                        err = std::max({err, std::abs(closed.mat(i, j) - viaK.mat(i, j)),
                                        std::abs(closed.mat(i, j) - seq.mat(i, j))});
                r.worst_error = std::max(r.worst_error, err);
                ++r.checked;
                if (err > 1e-10) {
                    ++r.failures;
                    r.passed = false;
                }
            }
        out.push_back(r);
    }
    return out;
}

std::vector<PropertyResult> run_nb_eb_suite(uint64_t seed, long samples) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    PropertyResult nb_eb{"nb-implies-eb", true, 0, 0, 0.0};
    PropertyResult cp_eb{"cp-equals-eb-negdet-singular", true, 0, 0, 0.0};
    for (long i = 0; i < samples; ++i) {
        const double kappa = 2.0 * u(rng) + 1e-9;
        const double a = 4.0 * u(rng) + 1e-9;
        const double b = 4.0 * u(rng) + 1e-9;
        const int form = static_cast<int>(i % 3);
        GaussianChannel ch;
        if (form == 0)
            ch.X = {{{kappa, 0.0}, {0.0, kappa}}};
        else if (form == 1)
            ch.X = {{{kappa, 0.0}, {0.0, -kappa}}};
        else
            ch.X = {{{kappa, 0.0}, {0.0, 0.0}}};
        ch.Y = {{{a, 0.0}, {0.0, b}}};
        if (!is_cp(ch)) continue;
        const bool nb = is_nb(ch);
        const bool eb = is_eb(ch);
        ++nb_eb.checked;
        if (nb && !eb) {
            ++nb_eb.failures;
            nb_eb.passed = false;
        }
        if (form != 0) {
            ++cp_eb.checked;
            if (!eb) { // CP holds by construction here
                ++cp_eb.failures;
                cp_eb.passed = false;
            }
        }
    }
    return {nb_eb, cp_eb};
}

std::vector<PropertyResult> run_discord_oracle_suite(uint64_t seed, long samples) {
    std::mt19937_64 rng(seed);
    PropertyResult r{"discord-oracle", true, 0, 0, 0.0};
    for (long i = 0; i < samples; ++i) {
        const XStateCanonical x = random_x_state(rng);
        const OptimalMeasurement meas = optimal_measurement(x);
        const double brute = brute_force_sa_min(x);
        const double err = std::abs(meas.sa_min - brute);
        r.worst_error = std::max(r.worst_error, err);
        ++r.checked;
        if (err > 1e-4 || meas.sa_min > brute + 1e-9) {
            ++r.failures;
            r.passed = false;
        }
    }
    return {r};
}

} // namespace qcorr::cli
