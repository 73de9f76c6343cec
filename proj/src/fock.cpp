#include "qcorr/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace qcorr {

namespace {

double log_binomial(int n, int k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

// exp(0.5 log C(n,k) + terms), with 0 * log 0 treated as 0.
double pow_term(double base, double exponent) {
    if (exponent == 0.0) return 0.0;
    if (base <= 0.0) return -std::numeric_limits<double>::infinity();
    return exponent * std::log(base);
}

double assemble(std::initializer_list<double> log_terms) {
    double s = 0.0;
    for (double t : log_terms) {
        if (std::isinf(t) && t < 0.0) return 0.0;
        s += t;
    }
    return std::exp(s);
}

// Diagonal completeness deficit of the truncated amplifier family at level m:
// 1 - kappa^{-2(m+1)} sum_{l=0}^{L} C(m+l, l) (1 - kappa^{-2})^l.
double amp_deficit(double kappa, int m, int l_max) {
    if (kappa <= 1.0) return 0.0;
    const double x = 1.0 - 1.0 / (kappa * kappa);
    const double logk2 = 2.0 * std::log(kappa);
    double sum = 0.0;
    for (int l = 0; l <= l_max; ++l)
        sum += std::exp(log_binomial(m + l, l) + l * std::log(x) - (m + 1) * logk2);
    return 1.0 - sum;
}

// Output truncation large enough that the dropped amplifier tail, weighted by
// the entry magnitudes of the input, stays below tail_tol.
int escalated_cut(double kappa_amp, const FockOperator& op, double tail_tol, int start_cut) {
    auto weighted_deficit = [&](int out_cut) {
        double total = 0.0;
        for (int m = 0; m < op.n_cut; ++m)
            for (int n = 0; n < op.n_cut; ++n) {
                const double w = std::abs(op.mat(m, n));
                if (w == 0.0) continue;
                const int level = std::max(m, n);
                total += w * std::min(1.0, std::abs(amp_deficit(
                                               kappa_amp, level, out_cut - 1 - level)));
            }
        return total;
    };
    int out_cut = start_cut;
    while (weighted_deficit(out_cut) > tail_tol) {
        if (out_cut >= kMaxNCut)
            throw TruncationError("amplifier tail mass exceeds the requested tolerance");
        out_cut = std::min(2 * out_cut, kMaxNCut);
    }
    return out_cut;
}

} // namespace

FockOperator FockOperator::ketbra(int m, int n, int n_cut) {
    if (m < 0 || n < 0 || m >= n_cut || n >= n_cut)
        throw DimensionError("ketbra: index outside the truncation");
    FockOperator op(n_cut);
    op.mat(m, n) = 1.0;
    return op;
}

FockOperator FockOperator::embedded(int new_cut) const {
    if (new_cut < n_cut) throw DimensionError("embedded: cannot shrink the truncation");
    FockOperator out(new_cut);
    for (int r = 0; r < n_cut; ++r)
        for (int c = 0; c < n_cut; ++c) out.mat(r, c) = mat(r, c);
    return out;
}

KrausFamily build_kraus(KrausKind kind, double kappa, int n_cut, int l_max) {
    if (n_cut <= 0) throw DimensionError("build_kraus: n_cut must be positive");
    if (l_max > n_cut) throw DomainError("build_kraus: l_max must not exceed n_cut");
    switch (kind) {
        case KrausKind::Atten:
            if (kappa < 0.0 || kappa > 1.0 + 1e-12)
                throw DomainError("build_kraus: attenuator needs kappa in [0, 1]");
            break;
        case KrausKind::Amp:
            if (kappa < 1.0 - 1e-12) throw DomainError("build_kraus: amplifier needs kappa >= 1");
            break;
        case KrausKind::Conj:
            if (kappa <= 0.0) throw DomainError("build_kraus: conjugator needs kappa > 0");
            break;
    }
    KrausFamily fam{kind, kappa, n_cut, {}};
    fam.ops.reserve(static_cast<size_t>(l_max) + 1);
    for (int l = 0; l <= l_max; ++l) {
        FockOperator op(n_cut);
        if (kind == KrausKind::Atten) {
            const double one_minus_k2 = std::max(0.0, 1.0 - kappa * kappa);
            for (int m = 0; m + l < n_cut; ++m)
                op.mat(m, m + l) = assemble({0.5 * log_binomial(m + l, l),
                                             pow_term(one_minus_k2, 0.5 * l),
                                             pow_term(kappa, m)});
        } else if (kind == KrausKind::Amp) {
            const double one_minus_ki2 = std::max(0.0, 1.0 - 1.0 / (kappa * kappa));
            for (int m = 0; m + l < n_cut; ++m)
                op.mat(m + l, m) = assemble({-std::log(kappa),
                                             0.5 * log_binomial(m + l, l),
                                             pow_term(one_minus_ki2, 0.5 * l),
                                             pow_term(1.0 / kappa, m)});
        } else {
            // T_l has entries at (l - n, n) for n = 0..l.
            for (int n = 0; n <= l && l - n < n_cut && n < n_cut; ++n)
                op.mat(l - n, n) =
                    assemble({-(n + 1) * 0.5 * std::log(1.0 + kappa * kappa),
                              -(l - n) * 0.5 * std::log(1.0 + 1.0 / (kappa * kappa)),
                              0.5 * log_binomial(l, n)});
        }
        fam.ops.push_back(std::move(op));
    }
    return fam;
}

FockOperator apply_kraus(const std::vector<FockOperator>& ops, const FockOperator& op) {
    if (ops.empty()) throw DomainError("apply_kraus: empty operator list");
    FockOperator out(op.n_cut);
    for (const FockOperator& k : ops) {
        if (k.n_cut != op.n_cut)
            throw DimensionError("apply_kraus: truncation mismatch");
        out.mat = out.mat + k.mat * op.mat * k.mat.adjoint();
    }
    return out;
}

FockOperator apply_quantum_limited(KrausKind kind, double kappa, const FockOperator& op,
                                   double tail_tol) {
    if (kind == KrausKind::Conj)
        throw DomainError("apply_quantum_limited: conjugator action not provided here");
    if (kind == KrausKind::Atten) {
        if (kappa < 0.0 || kappa > 1.0 + 1e-12)
            throw DomainError("apply_quantum_limited: attenuator needs kappa in [0, 1]");
        const double one_minus_k2 = std::max(0.0, 1.0 - kappa * kappa);
        FockOperator out(op.n_cut);
        for (int m = 0; m < op.n_cut; ++m)
            for (int n = 0; n < op.n_cut; ++n) {
                const Complex v = op.mat(m, n);
                if (v == Complex(0.0, 0.0)) continue;
                const int lmax = std::min(m, n);
                for (int l = 0; l <= lmax; ++l) {
                    const double coeff =
                        assemble({0.5 * log_binomial(m, l) + 0.5 * log_binomial(n, l),
                                  pow_term(one_minus_k2, l), pow_term(kappa, m + n - 2 * l)});
                    out.mat(m - l, n - l) += coeff * v;
                }
            }
        return out;
    }
    if (kappa < 1.0 - 1e-12)
        throw DomainError("apply_quantum_limited: amplifier needs kappa >= 1");

    const int out_cut = escalated_cut(kappa, op, tail_tol, op.n_cut);

    const double one_minus_ki2 = std::max(0.0, 1.0 - 1.0 / (kappa * kappa));
    const double logk = std::log(kappa);
    FockOperator out(out_cut);
    for (int m = 0; m < op.n_cut; ++m)
        for (int n = 0; n < op.n_cut; ++n) {
            const Complex v = op.mat(m, n);
            if (v == Complex(0.0, 0.0)) continue;
            for (int l = 0; m + l < out_cut && n + l < out_cut; ++l) {
                const double coeff =
                    assemble({-(m + n + 2) * logk,
                              0.5 * log_binomial(n + l, l) + 0.5 * log_binomial(m + l, l),
                              pow_term(one_minus_ki2, l)});
                out.mat(m + l, n + l) += coeff * v;
            }
        }
    return out;
}

FockOperator apply_noisy(NoisyKind kind, double kappa, double a, const FockOperator& op,
                         double tail_tol) {
    const QuantumLimitedPair pair = noisy_decomposition(kind, kappa, a);
    const double k1 = pair.kappa1;
    const double k2 = pair.kappa2;
    if (k2 <= 1.0 + 1e-15) {
        // No amplifier stage: plain quantum-limited attenuator.
        return apply_quantum_limited(KrausKind::Atten, k1, op, tail_tol);
    }

    const int out_cut = escalated_cut(k2, op, tail_tol, op.n_cut);

    const double one_minus_k12 = std::max(0.0, 1.0 - k1 * k1);
    const double one_minus_k2i2 = std::max(0.0, 1.0 - 1.0 / (k2 * k2));
    FockOperator out(out_cut);
    for (int m = 0; m < op.n_cut; ++m)
        for (int n = 0; n < op.n_cut; ++n) {
            const Complex v = op.mat(m, n);
            if (v == Complex(0.0, 0.0)) continue;
            for (int l = 0; l <= std::min(m, n); ++l) {
                const double base =
                    -2.0 * std::log(k2) + pow_term(k1 / k2, m + n - 2 * l) +
                    0.5 * (log_binomial(m, l) + log_binomial(n, l)) +
                    pow_term(one_minus_k12, l);
                if (std::isinf(base)) continue;
                for (int j = 0; m - l + j < out_cut && n - l + j < out_cut; ++j) {
                    const double coeff = assemble(
                        {base, 0.5 * (log_binomial(m - l + j, j) + log_binomial(n - l + j, j)),
                         pow_term(one_minus_k2i2, j)});
                    out.mat(m - l + j, n - l + j) += coeff * v;
                }
            }
        }
    return out;
}

std::vector<FockOperator> compose_kraus_products(const KrausFamily& later,
                                                 const KrausFamily& earlier) {
    if (later.n_cut != earlier.n_cut)
        throw DimensionError("compose_kraus_products: truncation mismatch");
    std::vector<FockOperator> out;
    out.reserve(later.ops.size() * earlier.ops.size());
    for (const FockOperator& kl : later.ops)
        for (const FockOperator& ke : earlier.ops) {
            FockOperator prod(later.n_cut);
            prod.mat = kl.mat * ke.mat;
            out.push_back(std::move(prod));
        }
    return out;
}

double kraus_completeness_deficit(const KrausFamily& f, int m_max) {
    ComplexMatrix sum(f.n_cut, f.n_cut);
    for (const FockOperator& k : f.ops) sum = sum + k.mat.adjoint() * k.mat;
    double worst = 0.0;
    for (int m = 0; m <= std::min(m_max, f.n_cut - 1); ++m)
        worst = std::max(worst, std::abs(sum(m, m) - Complex(1.0)));
    return worst;
}

RobustnessElements robustness_elements(NoisyKind kind, int n, double kappa, double a) {
    if (n < 1) throw DomainError("robustness_elements: photon number must be >= 1");
    if (a < 0.0) throw DomainError("robustness_elements: noise must be nonnegative");
    double tau; // channel-type factor: (1 + a/2) or (kappa^2 + a/2)
    if (kind == NoisyKind::Atten) {
        if (kappa < 0.0 || kappa > 1.0 + 1e-12)
            throw DomainError("robustness_elements: attenuator needs kappa <= 1");
        tau = 1.0 + 0.5 * a;
    } else {
        if (kappa < 1.0 - 1e-12)
            throw DomainError("robustness_elements: amplifier needs kappa >= 1");
        tau = kappa * kappa + 0.5 * a;
    }
    const double ti = 1.0 / tau;
    const double k2 = kappa * kappa;

    RobustnessElements r{};
    r.n = n;
    r.kappa = kappa;
    r.a = a;
    double x1 = 0.0;
    const double mix = std::max(0.0, (1.0 - k2 * ti) * (1.0 - ti));
    for (int l = 0; l <= n; ++l)
        x1 += assemble({2.0 * log_binomial(n, l), pow_term(k2 * ti * ti, l),
                        pow_term(mix, n - l)});
    r.x1 = ti * x1;
    r.x2 = ti * std::pow(std::max(0.0, 1.0 - k2 * ti), n);
    r.x3 = ti;
    r.x4 = ti * std::pow(std::max(0.0, 1.0 - ti), n);
    r.x5 = std::pow(kappa, n) * std::pow(ti, n + 1);
    return r;
}

double delta(int which, int n, double kappa, double a) {
    const NoisyKind kind = (which <= 2) ? NoisyKind::Atten : NoisyKind::Amp;
    const RobustnessElements x = robustness_elements(kind, n, kappa, a);
    const double half_x5sq = 0.5 * x.x5 * x.x5;
    switch (which) {
        case 1:
        case 3:
            return x.x1 * x.x2 * x.x3 * x.x4 - half_x5sq * half_x5sq;
        case 2:
        case 4: {
            const double m = 0.5 * (x.x1 * x.x2 + x.x3 * x.x4);
            return m * m - half_x5sq * half_x5sq;
        }
        default:
            throw DomainError("delta: selector must be 1..4");
    }
}

double critical_noise(int which, int n, double kappa) {
    if (delta(which, n, kappa, 0.0) >= 0.0)
        throw NoSolutionError("critical_noise: no certified entanglement at zero noise");
    double a_hi = std::max(4.0, 4.0 * kappa * kappa);
    int expansions = 0;
    while (delta(which, n, kappa, a_hi) < 0.0) {
        if (++expansions > 3)
            throw BracketError("critical_noise: no sign change in the search bracket");
        a_hi *= 2.0;
    }
    // The functional is monotone in a on the bracket; verify on a coarse grid
    // and fall back to a fine scan for the first crossing if that fails.
    double lo = 0.0, hi = a_hi;
    bool monotone = true;
    double prev = delta(which, n, kappa, 0.0);
    for (int i = 1; i <= 8; ++i) {
        const double v = delta(which, n, kappa, a_hi * i / 8.0);
        if (v < prev - 1e-12) monotone = false;
        prev = v;
    }
    if (!monotone) {
        const int fine = 4096;
        for (int i = 1; i <= fine; ++i) {
            const double av = a_hi * i / fine;
            if (delta(which, n, kappa, av) >= 0.0) {
                lo = a_hi * (i - 1) / fine;
                hi = av;
                break;
            }
        }
    }
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (delta(which, n, kappa, mid) < 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

FockOperator evolve_two_sided(TwoModeState state, int n, double mu, NoisyKind kind,
                              double kappa, double a, int n_cut) {
    struct Term {
        int m1, n1, m2, n2;
        double coeff;
    };
    std::vector<Term> terms;
    if (state == TwoModeState::Noon || state == TwoModeState::Pnes) {
        if (n < 1) throw DomainError("evolve_two_sided: photon number must be >= 1");
        if (n_cut < 2 * n + 4)
            throw DimensionError("evolve_two_sided: n_cut must be at least 2n + 4");
        if (state == TwoModeState::Noon)
            terms = {{n, n, 0, 0, 0.5}, {n, 0, 0, n, 0.5}, {0, n, n, 0, 0.5}, {0, 0, n, n, 0.5}};
        else
            terms = {{0, 0, 0, 0, 0.5}, {0, n, 0, n, 0.5}, {n, 0, n, 0, 0.5}, {n, n, n, n, 0.5}};
    } else {
        if (mu < 0.0) throw DomainError("evolve_two_sided: mu must be nonnegative");
        const double th = std::tanh(mu);
        const double pref = 1.0 - th * th; // sech^2
        for (int m = 0; m < n_cut; ++m)
            for (int l = 0; l < n_cut; ++l) {
                const double c = pref * std::pow(th, m + l);
                if (c < 1e-18) continue;
                terms.push_back({m, l, m, l, c});
            }
    }

    // Per-mode channel action, memoized as sparse entry lists. The tail
    // tolerance of each elementary operator is weighted by its coefficient in
    // the state so the total dropped mass stays below kTailTol.
    struct Entry {
        int r, c;
        Complex v;
    };
    std::map<std::pair<int, int>, std::vector<Entry>> cache;
    int out_cut = n_cut;
    auto evolved = [&](int m, int nn, double weight) {
        const auto key = std::make_pair(m, nn);
        if (cache.count(key)) return;
        const double tol = std::min(1.0, kTailTol / std::max(weight, 1e-300));
        const FockOperator res =
            apply_noisy(kind, kappa, a, FockOperator::ketbra(m, nn, n_cut), tol);
        out_cut = std::max(out_cut, res.n_cut);
        std::vector<Entry> entries;
        for (int r = 0; r < res.n_cut; ++r)
            for (int c = 0; c < res.n_cut; ++c)
                if (res.mat(r, c) != Complex(0.0, 0.0)) entries.push_back({r, c, res.mat(r, c)});
        cache.emplace(key, std::move(entries));
    };
    for (const Term& t : terms) {
        evolved(t.m1, t.n1, std::abs(t.coeff));
        evolved(t.m2, t.n2, std::abs(t.coeff));
    }
    if (out_cut > 64)
        throw TruncationError("evolve_two_sided: escalated truncation too large for two modes");

    FockOperator out(out_cut * out_cut);
    for (const Term& t : terms) {
        const auto& f1 = cache.at({t.m1, t.n1});
        const auto& f2 = cache.at({t.m2, t.n2});
        for (const Entry& e1 : f1)
            for (const Entry& e2 : f2)
                out.mat(e1.r * out_cut + e2.r, e1.c * out_cut + e2.c) +=
                    t.coeff * e1.v * e2.v;
    }
    return out;
}

} // namespace qcorr
