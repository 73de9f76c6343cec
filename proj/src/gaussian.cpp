#include "qcorr/gaussian.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

Mat2 mat2_identity() { return {{{1.0, 0.0}, {0.0, 1.0}}}; }

Mat2 mat2_scale(const Mat2& m, double s) {
    Mat2 out = m;
    for (auto& row : out)
        for (double& v : row) v *= s;
    return out;
}

Mat2 mat2_mul(const Mat2& a, const Mat2& b) {
    Mat2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) out[i][j] += a[i][k] * b[k][j];
    return out;
}

Mat2 mat2_transpose(const Mat2& m) {
    return {{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}};
}

Mat2 mat2_add(const Mat2& a, const Mat2& b) {
    Mat2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[i][j] = a[i][j] + b[i][j];
    return out;
}

// Eigenvalues of Y + i c beta, beta = [[0,1],[-1,0]]; hermitian closed form.
double min_eig_y_plus_icbeta(const Mat2& y, double c) {
    const double a = y[0][0];
    const double d = y[1][1];
    const double off = std::hypot(y[0][1], c);
    const double disc = std::sqrt((a - d) * (a - d) / 4.0 + off * off);
    return 0.5 * (a + d) - disc;
}

struct SymEig2 {
    double lo, hi;          // ascending eigenvalues
    std::array<double, 2> v_lo, v_hi; // orthonormal eigenvectors
};

SymEig2 sym_eig2(const Mat2& y) {
    SymEig2 e{};
    const double a = y[0][0], b = y[0][1], d = y[1][1];
    const double disc = std::sqrt((a - d) * (a - d) / 4.0 + b * b);
    const double mean = 0.5 * (a + d);
    e.lo = mean - disc;
    e.hi = mean + disc;
    if (std::abs(b) < 1e-300) {
        if (a <= d) {
            e.v_lo = {1.0, 0.0};
            e.v_hi = {0.0, 1.0};
        } else {
            e.v_lo = {0.0, 1.0};
            e.v_hi = {1.0, 0.0};
        }
        return e;
    }
    const std::array<double, 2> v1 = {b, e.lo - a};
    const double n1 = std::hypot(v1[0], v1[1]);
    e.v_lo = {v1[0] / n1, v1[1] / n1};
    e.v_hi = {-e.v_lo[1], e.v_lo[0]};
    return e;
}

ComplexMatrix v_plus_i_omega(const Mat4& v, const Mat4& omega) {
    ComplexMatrix h(4, 4);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            h(i, j) = Complex(v[static_cast<size_t>(i)][static_cast<size_t>(j)],
                              omega[static_cast<size_t>(i)][static_cast<size_t>(j)]);
    return h;
}

Mat4 two_mode_symplectic_metric(double sign_second) {
    Mat4 omega{};
    omega[0][1] = 1.0;
    omega[1][0] = -1.0;
    omega[2][3] = sign_second;
    omega[3][2] = -sign_second;
    return omega;
}

} // namespace

GaussianChannel attenuator(double kappa, double a) {
    if (kappa < 0.0 || kappa > 1.0 + 1e-12 || a < 0.0)
        throw DomainError("attenuator: needs 0 <= kappa <= 1, a >= 0");
    GaussianChannel ch;
    ch.X = mat2_scale(mat2_identity(), kappa);
    ch.Y = mat2_scale(mat2_identity(), 1.0 - kappa * kappa + a);
    return ch;
}

GaussianChannel amplifier(double kappa, double a) {
    if (kappa < 1.0 - 1e-12 || a < 0.0)
        throw DomainError("amplifier: needs kappa >= 1, a >= 0");
    GaussianChannel ch;
    ch.X = mat2_scale(mat2_identity(), kappa);
    ch.Y = mat2_scale(mat2_identity(), kappa * kappa - 1.0 + a);
    return ch;
}

GaussianChannel conjugator(double kappa, double a) {
    if (kappa <= 0.0 || a < 0.0) throw DomainError("conjugator: needs kappa > 0, a >= 0");
    GaussianChannel ch;
    ch.X = {{{-kappa, 0.0}, {0.0, kappa}}};
    ch.Y = mat2_scale(mat2_identity(), 1.0 + kappa * kappa + a);
    return ch;
}

GaussianChannel classical_noise(double a) {
    if (a < 0.0) throw DomainError("classical_noise: needs a >= 0");
    GaussianChannel ch;
    ch.X = mat2_identity();
    ch.Y = mat2_scale(mat2_identity(), a);
    return ch;
}

GaussianChannel one_quadrature_noise(double a) {
    if (a < 0.0) throw DomainError("one_quadrature_noise: needs a >= 0");
    GaussianChannel ch;
    ch.X = mat2_identity();
    ch.Y = {{{a, 0.0}, {0.0, 0.0}}};
    return ch;
}

GaussianChannel fixed_output(double a) {
    if (a < 0.0) throw DomainError("fixed_output: needs a >= 0");
    GaussianChannel ch;
    ch.X = {{{0.0, 0.0}, {0.0, 0.0}}};
    ch.Y = mat2_scale(mat2_identity(), 1.0 + a);
    return ch;
}

GaussianChannel half_projector(double a) {
    if (a < 0.0) throw DomainError("half_projector: needs a >= 0");
    GaussianChannel ch;
    ch.X = {{{1.0, 0.0}, {0.0, 0.0}}};
    ch.Y = mat2_scale(mat2_identity(), 1.0 + a);
    return ch;
}

GaussianChannel unitary_channel(const Mat2& symplectic) {
    const double det = symplectic[0][0] * symplectic[1][1] - symplectic[0][1] * symplectic[1][0];
    if (std::abs(det - 1.0) > 1e-9)
        throw DomainError("unitary_channel: matrix must be symplectic (det 1)");
    GaussianChannel ch;
    ch.X = symplectic;
    ch.Y = {{{0.0, 0.0}, {0.0, 0.0}}};
    return ch;
}

CanonicalClass holevo_class(const GaussianChannel& ch, double tol) {
    const double detx = ch.det_x();
    const double dety = ch.Y[0][0] * ch.Y[1][1] - ch.Y[0][1] * ch.Y[1][0];
    const double sqrt_dety = std::sqrt(std::max(0.0, dety));
    double maxx = 0.0;
    for (const auto& row : ch.X)
        for (double v : row) maxx = std::max(maxx, std::abs(v));

    if (maxx <= tol) return {ChannelClass::A1_singular, 0.0, sqrt_dety - 1.0};
    if (std::abs(detx) <= tol * maxx * maxx) {
        const SymEig2 sv = sym_eig2(mat2_mul(mat2_transpose(ch.X), ch.X));
        return {ChannelClass::A2_singular, std::sqrt(std::max(0.0, sv.hi)), sqrt_dety - 1.0};
    }
    if (detx < 0.0) {
        const double kappa = std::sqrt(-detx);
        return {ChannelClass::D_conj, kappa, sqrt_dety - (1.0 + kappa * kappa)};
    }
    const double kappa = std::sqrt(detx);
    if (std::abs(kappa - 1.0) <= tol) {
        const double try_ = ch.Y[0][0] + ch.Y[1][1];
        if (dety <= tol * std::max(1.0, try_ * try_) && try_ > tol)
            return {ChannelClass::B1_onequad, 1.0, try_}; // rank-one Y; noise in one quadrature
        return {ChannelClass::B2_noise, 1.0, sqrt_dety};
    }
    if (kappa < 1.0)
        return {ChannelClass::C1_atten, kappa, sqrt_dety - (1.0 - kappa * kappa)};
    return {ChannelClass::C2_amp, kappa, sqrt_dety - (kappa * kappa - 1.0)};
}

NcCanonical nc_canonical_form(const GaussianChannel& ch, double tol) {
    const double detx = ch.det_x();
    const SymEig2 ye = sym_eig2(ch.Y);
    double maxx = 0.0;
    for (const auto& row : ch.X)
        for (double v : row) maxx = std::max(maxx, std::abs(v));
    if (std::abs(detx) <= tol * std::max(1.0, maxx * maxx)) {
        const SymEig2 sv = sym_eig2(mat2_mul(mat2_transpose(ch.X), ch.X));
        return {NcForm::SingularX, std::sqrt(std::max(0.0, sv.hi)), ye.lo, ye.hi};
    }
    if (detx > 0.0) return {NcForm::PositiveDet, std::sqrt(detx), ye.lo, ye.hi};
    return {NcForm::NegativeDet, std::sqrt(-detx), ye.lo, ye.hi};
}

bool is_cp(const GaussianChannel& ch, double tol) {
    return min_eig_y_plus_icbeta(ch.Y, 1.0 - ch.det_x()) >= -tol;
}

bool is_eb(const GaussianChannel& ch, double tol) {
    if (!is_cp(ch, tol)) throw NotCPError("is_eb: channel is not completely positive");
    return min_eig_y_plus_icbeta(ch.Y, -(1.0 + ch.det_x())) >= -tol;
}

bool is_nb(const GaussianChannel& ch, double tol) {
    if (!is_cp(ch, tol)) throw NotCPError("is_nb: channel is not completely positive");
    const NcCanonical nc = nc_canonical_form(ch, tol);
    if (nc.form == NcForm::SingularX) return nc.a >= 1.0 - tol && nc.b >= 1.0 - tol;
    const double k4 = nc.kappa * nc.kappa * nc.kappa * nc.kappa;
    return nc.a >= 1.0 - tol && nc.b >= 1.0 - tol &&
           (nc.a - 1.0) * (nc.b - 1.0) >= k4 - tol;
}

GaussianChannel compose(const GaussianChannel& later, const GaussianChannel& earlier) {
    GaussianChannel out;
    out.X = mat2_mul(earlier.X, later.X);
    out.Y = mat2_add(mat2_mul(mat2_transpose(later.X), mat2_mul(earlier.Y, later.X)), later.Y);
    return out;
}

QuantumLimitedPair noisy_decomposition(NoisyKind kind, double kappa, double a) {
    if (a < 0.0) throw DomainError("noisy_decomposition: noise must be nonnegative");
    QuantumLimitedPair p{};
    if (kind == NoisyKind::Atten) {
        if (kappa < 0.0 || kappa > 1.0 + 1e-12)
            throw DomainError("noisy_decomposition: attenuator needs kappa <= 1");
        p.kappa2 = std::sqrt(1.0 + 0.5 * a);
    } else {
        if (kappa < 1.0 - 1e-12)
            throw DomainError("noisy_decomposition: amplifier needs kappa >= 1");
        p.kappa2 = std::sqrt(kappa * kappa + 0.5 * a);
    }
    p.kappa1 = kappa / p.kappa2;
    return p;
}

VarianceMatrix2Mode::VarianceMatrix2Mode(const Mat4& v, double tol) : v_(v) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (std::abs(v_[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                         v_[static_cast<size_t>(j)][static_cast<size_t>(i)]) > tol)
                throw InvalidVarianceError("variance matrix must be symmetric");
    const ComplexMatrix h = v_plus_i_omega(v_, two_mode_symplectic_metric(1.0));
    if (herm_eigvals(h, 1e-8).front() < -std::max(tol, 1e-9))
        throw InvalidVarianceError("variance matrix violates the uncertainty relation");
}

VarianceMatrix2Mode VarianceMatrix2Mode::vacuum() {
    Mat4 v{};
    for (int i = 0; i < 4; ++i) v[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1.0;
    return VarianceMatrix2Mode(v);
}

VarianceMatrix2Mode VarianceMatrix2Mode::tmsv(double mu) {
    if (mu < 0.0) throw DomainError("tmsv: squeeze parameter must be nonnegative");
    const double c = std::cosh(2.0 * mu);
    const double s = std::sinh(2.0 * mu);
    Mat4 v{};
    v[0][0] = v[1][1] = v[2][2] = v[3][3] = c;
    v[0][2] = v[2][0] = s;
    v[1][3] = v[3][1] = -s;
    return VarianceMatrix2Mode(v);
}

VarianceMatrix2Mode evolve_variance(const GaussianChannel& ch, const VarianceMatrix2Mode& v,
                                    ChannelSides sides) {
    const bool left = sides != ChannelSides::Right;
    const bool right = sides != ChannelSides::Left;
    Mat4 k{};
    Mat4 y{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            const auto si = static_cast<size_t>(i);
            const auto sj = static_cast<size_t>(j);
            k[si][sj] = left ? ch.X[si][sj] : (i == j ? 1.0 : 0.0);
            k[si + 2][sj + 2] = right ? ch.X[si][sj] : (i == j ? 1.0 : 0.0);
            y[si][sj] = left ? ch.Y[si][sj] : 0.0;
            y[si + 2][sj + 2] = right ? ch.Y[si][sj] : 0.0;
        }
    Mat4 out{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double acc = 0.0;
            for (int r = 0; r < 4; ++r)
                for (int c = 0; c < 4; ++c)
                    acc += k[static_cast<size_t>(r)][static_cast<size_t>(i)] *
                           v(r, c) * k[static_cast<size_t>(c)][static_cast<size_t>(j)];
            out[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                acc + y[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    return VarianceMatrix2Mode(out);
}

bool simon_separable(const VarianceMatrix2Mode& v, double tol) {
    const ComplexMatrix h = v_plus_i_omega(v.v(), two_mode_symplectic_metric(-1.0));
    return herm_eigvals(h, 1e-8).front() >= -tol;
}

double gaussian_critical_noise(NoisyKind kind, double kappa, double mu) {
    if (mu < 0.0) throw DomainError("gaussian_critical_noise: mu must be nonnegative");
    const double decay = std::isinf(mu) ? 0.0 : std::exp(-2.0 * mu);
    if (kind == NoisyKind::Atten) {
        if (kappa < 0.0 || kappa > 1.0 + 1e-12)
            throw DomainError("gaussian_critical_noise: attenuator needs kappa <= 1");
        return kappa * kappa * (1.0 - decay);
    }
    if (kappa < 1.0 - 1e-12)
        throw DomainError("gaussian_critical_noise: amplifier needs kappa >= 1");
    return std::max(0.0, 2.0 - kappa * kappa * (1.0 + decay));
}

double find_squeeze_r0(const GaussianChannel& ch, double tol) {
    if (!is_eb(ch, tol)) throw NotEBError("find_squeeze_r0: channel is not entanglement breaking");
    if (is_nb(ch, tol)) return 0.0;

    const NcCanonical nc = nc_canonical_form(ch, tol);
    if (nc.form == NcForm::SingularX) {
        // Need both noise eigenvalues >= 1; scale the small one up.
        if (nc.a >= 1.0) return 0.0;
        return 0.5 * std::log(1.0 / nc.a);
    }
    const double k4 = nc.kappa * nc.kappa * nc.kappa * nc.kappa;
    auto nb_gap = [&](double r) {
        const double u = nc.a * std::exp(2.0 * r);
        const double v = nc.b * std::exp(-2.0 * r);
        return (u - 1.0) * (v - 1.0) - k4;
    };
    // The product u v = a b is invariant; the gap peaks where u = v.
    const double r_star = 0.25 * std::log(nc.b / nc.a);
    if (r_star > 50.0 || nb_gap(r_star) < 0.0)
        throw NoSolutionError("find_squeeze_r0: orbit does not reach the target region");
    double lo = 0.0, hi = r_star;
    for (int it = 0; it < 200 && hi - lo > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (nb_gap(mid) >= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

GaussianChannel apply_output_squeeze(const GaussianChannel& ch, double r) {
    const SymEig2 e = sym_eig2(ch.Y);
    const double ep = std::exp(r);
    const double em = std::exp(-r);
    // S = R diag(e^r, e^-r) R^T with R = [v_lo | v_hi].
    Mat2 s{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            s[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                ep * e.v_lo[static_cast<size_t>(i)] * e.v_lo[static_cast<size_t>(j)] +
                em * e.v_hi[static_cast<size_t>(i)] * e.v_hi[static_cast<size_t>(j)];
    return compose(unitary_channel(s), ch);
}

} // namespace qcorr
