#pragma once

// Phase-space description of single-mode bosonic Gaussian channels (X, Y):
// complete positivity, entanglement-breaking and nonclassicality-breaking
// predicates, canonical forms, composition, and two-mode variance evolution.
//
// Convention: the vacuum variance matrix is the identity; a channel acts on
// the characteristic function as chi(xi) -> chi(X xi) exp(-xi^T Y xi / 2)
// and on variance matrices as V -> X^T V X + Y.

#include <array>
#include <optional>

#include "qcorr/linalg.hpp"

namespace qcorr {

using Mat2 = std::array<std::array<double, 2>, 2>;
using Mat4 = std::array<std::array<double, 4>, 4>;

struct GaussianChannel {
    Mat2 X{};
    Mat2 Y{}; // symmetric

    double det_x() const { return X[0][0] * X[1][1] - X[0][1] * X[1][0]; }
};

// Canonical constructors (Y = quantum-limited Y0 plus isotropic noise a).
GaussianChannel attenuator(double kappa, double a = 0.0);      // C1, kappa <= 1
GaussianChannel amplifier(double kappa, double a = 0.0);       // C2, kappa >= 1
GaussianChannel conjugator(double kappa, double a = 0.0);      // D, any kappa > 0
GaussianChannel classical_noise(double a);                     // B2
GaussianChannel one_quadrature_noise(double a);                // B1
GaussianChannel fixed_output(double a = 0.0);                  // A1 (X = 0)
GaussianChannel half_projector(double a = 0.0);                // A2 (X = diag(1,0))
GaussianChannel unitary_channel(const Mat2& symplectic);       // (S, 0)

// Holevo-type classification of a channel presented in canonical form.
enum class ChannelClass { D_conj, C1_atten, C2_amp, A1_singular, A2_singular, B2_noise, B1_onequad };

struct CanonicalClass {
    ChannelClass tag;
    double kappa; // gain/attenuation invariant
    double noise; // added noise a relative to the quantum-limited member
};

CanonicalClass holevo_class(const GaussianChannel& ch, double tol = kDefaultTol);

// Nonclassicality-based canonical form: type decided by det X alone.
enum class NcForm { PositiveDet, NegativeDet, SingularX };

struct NcCanonical {
    NcForm form;
    double kappa; // sqrt|det X| (largest singular value for SingularX)
    double a, b;  // eigenvalues of Y, ascending
};

NcCanonical nc_canonical_form(const GaussianChannel& ch, double tol = kDefaultTol);

// Complete positivity: Y + i(beta - X^T beta X) >= 0.
bool is_cp(const GaussianChannel& ch, double tol = kDefaultTol);

// Entanglement breaking: CP and Y - i beta - i X^T beta X >= 0.
bool is_eb(const GaussianChannel& ch, double tol = kDefaultTol);

// Nonclassicality breaking: (a-1)(b-1) >= kappa^4 with a, b > 1 for the
// nonsingular forms; a, b >= 1 for singular X.
bool is_nb(const GaussianChannel& ch, double tol = kDefaultTol);

// Channel composition: `later` applied after `earlier`.
GaussianChannel compose(const GaussianChannel& later, const GaussianChannel& earlier);

enum class NoisyKind { Atten, Amp };

struct QuantumLimitedPair {
    double kappa1; // attenuator parameter, <= 1
    double kappa2; // amplifier parameter, >= 1
};

// Splits the noisy channel (kappa, a) into amplifier-after-attenuator
// quantum-limited factors.
QuantumLimitedPair noisy_decomposition(NoisyKind kind, double kappa, double a);

// Two-mode variance matrix with the uncertainty invariant V + i Omega >= 0.
class VarianceMatrix2Mode {
  public:
    explicit VarianceMatrix2Mode(const Mat4& v, double tol = kDefaultTol);

    static VarianceMatrix2Mode vacuum();
    static VarianceMatrix2Mode tmsv(double mu); // two-mode squeezed vacuum

    const Mat4& v() const { return v_; }
    double operator()(int i, int j) const { return v_[static_cast<size_t>(i)][static_cast<size_t>(j)]; }

  private:
    Mat4 v_;
};

enum class ChannelSides { Left, Right, Both };

// Per-mode action V -> K^T V K + Y_embed; throws InvalidVarianceError when the
// output violates the uncertainty relation (non-CP input channel).
VarianceMatrix2Mode evolve_variance(const GaussianChannel& ch, const VarianceMatrix2Mode& v,
                                    ChannelSides sides);

// Separability of a two-mode Gaussian state by the partial-transpose test on
// the variance matrix.
bool simon_separable(const VarianceMatrix2Mode& v, double tol = kDefaultTol);

// Additive noise at which the two-sided channel renders the TMSV with squeeze
// mu separable; pass mu = infinity for the all-Gaussian-states threshold.
double gaussian_critical_noise(NoisyKind kind, double kappa, double mu);

// Smallest squeeze r such that the channel followed by the unitary squeeze
// diag(e^r, e^-r) along a Y principal axis is nonclassicality breaking.
// Requires an entanglement-breaking channel.
double find_squeeze_r0(const GaussianChannel& ch, double tol = kDefaultTol);

// Channel followed by the principal-axis squeeze of magnitude r (expansion
// along Y's small-eigenvalue direction); realizes the find_squeeze_r0 orbit.
GaussianChannel apply_output_squeeze(const GaussianChannel& ch, double r);

} // namespace qcorr
