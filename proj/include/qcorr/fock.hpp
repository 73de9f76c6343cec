#pragma once

// Truncated Fock-space realization of the quantum-limited and noisy Gaussian
// channels: Kraus families, closed-form channel action on |m><n|, semigroup
// and composition identities, and the noisy-environment robustness
// functionals for NOON/PNES/TMSV states.

#include <vector>

#include "qcorr/gaussian.hpp"
#include "qcorr/linalg.hpp"

namespace qcorr {

constexpr int kDefaultNCut = 32;
constexpr int kMaxNCut = 128;
constexpr double kTailTol = 1e-8;

// Operator in the number basis |0..n_cut-1>.
struct FockOperator {
    int n_cut = 0;
    ComplexMatrix mat;

    FockOperator() = default;
    explicit FockOperator(int n) : n_cut(n), mat(n, n) {}

    // |m><n| embedded at truncation n_cut.
    static FockOperator ketbra(int m, int n, int n_cut);
    // Re-embeds into a larger truncation (entries preserved).
    FockOperator embedded(int new_cut) const;
};

enum class KrausKind { Atten, Amp, Conj };

struct KrausFamily {
    KrausKind kind;
    double kappa;
    int n_cut;
    std::vector<FockOperator> ops; // indexed by the family label l
};

// Kraus operators of the quantum-limited channels, truncated at n_cut with
// labels l = 0..l_max.
KrausFamily build_kraus(KrausKind kind, double kappa, int n_cut, int l_max);

// sum_l K_l op K_l^dagger for an explicit operator list.
FockOperator apply_kraus(const std::vector<FockOperator>& ops, const FockOperator& op);

// Closed-form action of the quantum-limited attenuator/amplifier. The
// amplifier output escalates its truncation (up to kMaxNCut) until the
// dropped diagonal tail mass is below tail_tol, else throws TruncationError.
FockOperator apply_quantum_limited(KrausKind kind, double kappa, const FockOperator& op,
                                   double tail_tol = kTailTol);

// Noisy channel action via the amplifier-after-attenuator decomposition,
// evaluated by the closed-form double sum.
FockOperator apply_noisy(NoisyKind kind, double kappa, double a, const FockOperator& op,
                         double tail_tol = kTailTol);

// All pairwise products later_i * earlier_j; a Kraus set of the composite.
std::vector<FockOperator> compose_kraus_products(const KrausFamily& later,
                                                 const KrausFamily& earlier);

// Worst-case completeness deficit max_m |1 - (sum_l K_l^dag K_l)_mm| over
// levels m <= m_max.
double kraus_completeness_deficit(const KrausFamily& f, int m_max);

// Single-mode matrix elements of the noisy channel acting on |n><n|, |0><0|
// and |n><0|; closed forms in (kappa, a).
struct RobustnessElements {
    double x1, x2, x3, x4, x5;
    int n;
    double kappa, a;
};

RobustnessElements robustness_elements(NoisyKind kind, int n, double kappa, double a);

// Determinant functionals over the {|00>,|0n>,|n0>,|nn>} subspace of the
// two-sided evolved state; negative values certify NPT entanglement.
//   1: NOON/attenuator  2: PNES/attenuator  3: NOON/amplifier  4: PNES/amplifier
double delta(int which, int n, double kappa, double a);

// Root of delta(a) = 0 in a; the noise level at which the certified
// entanglement disappears.
double critical_noise(int which, int n, double kappa);

enum class TwoModeState { Noon, Pnes, Tmsv };

// Two-sided symmetric channel action on NOON(n)/PNES(n) (param = n) or
// TMSV (param ignored, mu given). The result is a two-mode operator whose
// row/column index is i1 * d + i2 with d the per-mode truncation (n_cut, or
// larger if the amplifier tail forced an escalation); the stored n_cut of the
// result equals d * d.
FockOperator evolve_two_sided(TwoModeState state, int n, double mu, NoisyKind kind,
                              double kappa, double a, int n_cut);

} // namespace qcorr
