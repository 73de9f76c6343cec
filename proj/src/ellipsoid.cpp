#include "qcorr/ellipsoid.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

constexpr double kLn2 = 0.6931471805599453;
constexpr double kRadiusCap = 1.0 - 1e-15;

// Bloch radius of the conditional state at height z on the x-z section.
double r_of_z(const CorrelationEllipsoid& e, double z) {
    const double dz = (z - e.zc) / e.az;
    const double sq = z * z + e.ax * e.ax * std::max(0.0, 1.0 - dz * dz);
    return std::min(std::sqrt(std::max(0.0, sq)), 1.0);
}

double entropy_at(const CorrelationEllipsoid& e, double z) {
    return binary_entropy(r_of_z(e, z));
}

// X(r) = log2[(1+r)/(1-r)] / (2r), continuous limit 1/ln2 at r = 0.
double x_factor(double r) {
    r = std::clamp(r, 0.0, kRadiusCap);
    if (r < 1e-8) return (1.0 + r * r / 3.0) / kLn2;
    return std::log2((1.0 + r) / (1.0 - r)) / (2.0 * r);
}

// Y(r) = 1 / (ln2 (1 - r^2)).
double y_factor(double r) {
    r = std::clamp(r, 0.0, kRadiusCap);
    return 1.0 / (kLn2 * (1.0 - r * r));
}

double lambda_entropy(const XStateEigensystem& es) {
    double s = 0.0;
    for (double lam : es.lambda)
        if (lam > kEntropyFloor) s -= lam * std::log2(lam);
    return s;
}

StokesVector stokes(double s0, double s1, double s2, double s3) {
    StokesVector v;
    v[0] = s0;
    v[1] = s1;
    v[2] = s2;
    v[3] = s3;
    return v;
}

std::vector<std::pair<double, StokesVector>> vn_z_povm() {
    return {{1.0, stokes(1, 0, 0, 1)}, {1.0, stokes(1, 0, 0, -1)}};
}

std::vector<std::pair<double, StokesVector>> vn_x_povm() {
    return {{1.0, stokes(1, 1, 0, 0)}, {1.0, stokes(1, -1, 0, 0)}};
}

} // namespace

CorrelationEllipsoid ellipsoid_from_x(const XStateCanonical& xin, double tol) {
    XStateCanonical x = xin;
    CorrelationEllipsoid e;
    if (std::abs(x.m22) > std::abs(x.m11)) {
        std::swap(x.m11, x.m22);
        e.axes_swapped = true;
    }
    if (std::abs(x.m03) >= 1.0 - tol)
        throw SingularInputError("ellipsoid_from_x: |m03| too close to 1");
    const double denom = 1.0 - x.m03 * x.m03;
    e.ax = std::abs(x.m11) / std::sqrt(denom);
    e.ay = std::abs(x.m22) / std::sqrt(denom);
    e.az = std::abs(x.m33 - x.m03 * x.m30) / denom;
    e.zc = (x.m30 - x.m03 * x.m33) / denom;
    e.zi = x.m30;
    const double det = x.m11 * x.m22 * (x.m33 - x.m03 * x.m30);
    e.det_sign = det >= 0.0 ? 1 : -1;
    return e;
}

XStateCanonical x_from_ellipsoid(const CorrelationEllipsoid& e, double tol) {
    XStateCanonical x;
    double m03 = 0.0;
    if (e.az > kDegenerateAz) {
        m03 = (e.zi - e.zc) / e.az;
    } else if (std::abs(e.zi - e.zc) > tol) {
        throw NotPhysicalError("x_from_ellipsoid: degenerate ellipsoid requires z_I = z_c");
    }
    if (std::abs(m03) >= 1.0 - tol)
        throw SingularInputError("x_from_ellipsoid: z_I at the pole of the z-extent");
    const double denom = 1.0 - m03 * m03;
    x.m03 = m03;
    x.m30 = e.zi;
    x.m33 = e.az * denom + m03 * e.zi;
    x.m11 = e.ax * std::sqrt(denom);
    x.m22 = (e.det_sign >= 0 ? 1.0 : -1.0) * e.ay * std::sqrt(denom);
    if (!xstate_positivity(x, 1e-9))
        throw NotPhysicalError("x_from_ellipsoid: parameters violate positivity");
    return x;
}

double cond_entropy_z(const CorrelationEllipsoid& e, double z) {
    if (e.az < kDegenerateAz)
        throw DegenerateEllipsoidError("cond_entropy_z: a_z ~ 0, use the closed-form rules");
    const double lo = e.zc - e.az;
    const double hi = std::min(e.zi, e.zc + e.az);
    const double span_tol = 1e-12 * std::max(1.0, e.az);
    if (z < lo - span_tol || z > hi + span_tol)
        throw DomainError("cond_entropy_z: z outside [z_c - a_z, min(z_I, z_c + a_z)]");
    z = std::clamp(z, lo, e.zc + e.az);
    const double top = e.zc + e.az;
    if (top - z < 1e-14) return entropy_at(e, top);
    const double p1 = (e.zi - z) / (top - z);
    const double p2 = (top - e.zi) / (top - z);
    return p1 * entropy_at(e, top) + p2 * entropy_at(e, z);
}

double derivative_G(const CorrelationEllipsoid& e, double z) {
    if (e.az < kDegenerateAz)
        throw DegenerateEllipsoidError("derivative_G: a_z ~ 0");
    const double lo = e.zc - e.az;
    const double top = e.zc + e.az;
    if (z <= lo || z >= top) throw DomainError("derivative_G: z outside the open bracket");
    const double r = r_of_z(e, z);
    if (r >= 1.0 - 1e-12) throw SingularityError("derivative_G: conditional state is pure");
    const double g = e.ax * e.ax * (z - e.zc) / (e.az * e.az) - z;
    const double num = (top - z) * g * x_factor(r) - (entropy_at(e, top) - entropy_at(e, z));
    return num / ((top - z) * (top - z));
}

double boundary_ax_V(double az, double zc) {
    if (!(az > 0.0) || zc < 0.0 || zc + az >= 1.0)
        throw DomainError("boundary_ax_V: need a_z > 0, z_c >= 0, z_c + a_z < 1");
    const double bot = std::abs(zc - az);
    const double top = zc + az;
    const double val = (binary_entropy(bot) - binary_entropy(top)) / (2.0 * x_factor(bot)) -
                       az * (zc - az);
    return std::sqrt(std::max(0.0, val));
}

double boundary_ax_H(double az, double zc) {
    if (!(az > 0.0) || zc < 0.0 || zc + az >= 1.0)
        throw DomainError("boundary_ax_H: need a_z > 0, z_c >= 0, z_c + a_z < 1");
    const double top = zc + az;
    const double xf = x_factor(top);
    const double yf = y_factor(top);
    const double w = xf * ((zc - az) * (zc - az) * xf + 4.0 * az * zc * yf);
    const double bracket = (zc - az) * xf + 2.0 * az * yf - std::sqrt(std::max(0.0, w));
    const double ax_sq = top * bracket / (2.0 * (yf - xf));
    return std::sqrt(std::max(0.0, ax_sq));
}

std::optional<double> find_z0(const CorrelationEllipsoid& e) {
    if (e.az < kDegenerateAz) return std::nullopt;
    if (e.zc + e.az >= 1.0) return std::nullopt; // section touches the pure-state sphere
    const double ax_v = boundary_ax_V(e.az, e.zc);
    const double ax_h = boundary_ax_H(e.az, e.zc);
    if (e.ax <= ax_v + kWedgeMargin || e.ax >= ax_h - kWedgeMargin) return std::nullopt;

    const double lo = e.zc - e.az;
    const double top = e.zc + e.az;
    // Inside the wedge G is negative at the bottom end and positive at the
    // top end; the endpoints themselves are not evaluated because the
    // (top - z)^-2 factor makes G numerically meaningless there.
    double a = lo;
    double b = top;
    for (int it = 0; it < 200 && (b - a) > 1e-12; ++it) {
        const double mid = 0.5 * (a + b);
        if (derivative_G(e, mid) < 0.0)
            a = mid;
        else
            b = mid;
    }
    const double z0 = 0.5 * (a + b);

    const double safe = 1e-6 * (top - lo);
    if (z0 - lo < safe || top - z0 < safe) {
        // The walk collapsed onto an endpoint: the sign pattern inside the
        // declared wedge is inconsistent. Retry as a golden-section minimum
        // of the z_I-independent part of S^A before giving up.
        auto phi = [&](double z) {
            return ((e.zc - z) * entropy_at(e, top) + (top - e.zc) * entropy_at(e, z)) /
                   (top - z);
        };
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double ga = lo + safe;
        double gb = top - safe;
        double x1 = gb - gr * (gb - ga);
        double x2 = ga + gr * (gb - ga);
        double f1 = phi(x1), f2 = phi(x2);
        for (int it = 0; it < 200 && (gb - ga) > 1e-12; ++it) {
            if (f1 < f2) {
                gb = x2; x2 = x1; f2 = f1;
                x1 = gb - gr * (gb - ga);
                f1 = phi(x1);
            } else {
                ga = x1; x1 = x2; f1 = f2;
                x2 = ga + gr * (gb - ga);
                f2 = phi(x2);
            }
        }
        const double zg = 0.5 * (ga + gb);
        if (zg - lo < 2.0 * safe || top - zg < 2.0 * safe)
            throw BracketError("find_z0: no interior minimum despite wedge membership");
        return zg;
    }
    return z0;
}

OptimalMeasurement optimal_measurement(const XStateCanonical& xin) {
    const XStateCanonical x = canonical_gauge(xin);
    OptimalMeasurement out;
    const double vnx = binary_entropy(std::sqrt(x.m11 * x.m11 + x.m30 * x.m30));

    CorrelationEllipsoid e = ellipsoid_from_x(x);
    if (e.az < kDegenerateAz) {
        // Linear/disc/point section: the horizontal projection is optimal.
        out.kind = MeasurementKind::VonNeumannX;
        out.sa_min = vnx;
        out.povm = vn_x_povm();
        return out;
    }

    const double vnz = cond_entropy_z(e, e.zc - e.az);
    double ax_v, ax_h;
    if (e.zc + e.az >= 1.0) {
        // Section touches the pure-state sphere; only the z_c = 0 tie case
        // reaches here for physical states, where both projections agree.
        ax_v = ax_h = e.az;
    } else {
        ax_v = boundary_ax_V(e.az, e.zc);
        ax_h = boundary_ax_H(e.az, e.zc);
    }

    if (e.ax <= ax_v + kWedgeMargin) {
        out.kind = MeasurementKind::VonNeumannZ;
        out.sa_min = vnz;
        out.povm = vn_z_povm();
        return out;
    }
    if (e.ax >= ax_h - kWedgeMargin) {
        out.kind = MeasurementKind::VonNeumannX;
        out.sa_min = vnx;
        out.povm = vn_x_povm();
        return out;
    }
    const std::optional<double> z0 = find_z0(e);
    if (!z0.has_value() || e.zi <= *z0) {
        out.kind = MeasurementKind::VonNeumannX;
        out.sa_min = vnx;
        out.povm = vn_x_povm();
        if (z0.has_value()) out.z0 = *z0;
        return out;
    }
    out.kind = MeasurementKind::ThreeElement;
    out.z0 = *z0;
    out.sa_min = cond_entropy_z(e, *z0);
    const double cos_theta =
        std::clamp((x.m30 - *z0) / (x.m33 - x.m03 * *z0), 0.0, 1.0);
    out.theta = std::acos(cos_theta);
    const double sin_theta = std::sin(out.theta);
    const double p0 = cos_theta / (1.0 + cos_theta);
    const double p1 = 0.5 / (1.0 + cos_theta);
    out.povm = {{2.0 * p0, stokes(1, 0, 0, 1)},
                {2.0 * p1, stokes(1, sin_theta, 0, -cos_theta)},
                {2.0 * p1, stokes(1, -sin_theta, 0, -cos_theta)}};
    return out;
}

OptimalMeasurement optimal_measurement(const CorrelationEllipsoid& e) {
    return optimal_measurement(x_from_ellipsoid(e));
}

double vn_entropy_theta(const XStateCanonical& x, double theta) {
    if (theta < -1e-12 || theta > M_PI_2 + 1e-12)
        throw DomainError("vn_entropy_theta: theta outside [0, pi/2]");
    const double c = std::cos(std::clamp(theta, 0.0, M_PI_2));
    const double s = std::sin(std::clamp(theta, 0.0, M_PI_2));
    const double pp = 0.5 * (1.0 + x.m03 * c);
    const double pm = 0.5 * (1.0 - x.m03 * c);
    double total = 0.0;
    if (pp > kEntropyFloor) {
        const double r = std::sqrt(x.m11 * x.m11 * s * s +
                                   (x.m30 + x.m33 * c) * (x.m30 + x.m33 * c)) /
                         (2.0 * pp);
        total += pp * binary_entropy(std::min(r, 1.0));
    }
    if (pm > kEntropyFloor) {
        const double r = std::sqrt(x.m11 * x.m11 * s * s +
                                   (x.m30 - x.m33 * c) * (x.m30 - x.m33 * c)) /
                         (2.0 * pm);
        total += pm * binary_entropy(std::min(r, 1.0));
    }
    return total;
}

Correlations correlations(const XStateCanonical& xin) {
    const XStateCanonical x = canonical_gauge(xin);
    Correlations c;
    c.measurement = optimal_measurement(x);
    c.sa_min = c.measurement.sa_min;
    c.mutual = mutual_information(x);
    c.classical = binary_entropy(std::abs(x.m30)) - c.sa_min;
    c.discord = c.mutual - c.classical;
    return c;
}

ZeroDiscordClass classify_zero_discord(const DensityMatrix& rho, double tol) {
    const XStateCanonical x = xstate_canonical(rho).x;
    ZeroDiscordClass out;
    const bool m11_zero = std::abs(x.m11) <= tol;
    const bool m22_zero = std::abs(x.m22) <= tol;
    const bool m33_zero = std::abs(x.m33) <= tol;
    const bool m03_zero = std::abs(x.m03) <= tol;
    const bool m30_zero = std::abs(x.m30) <= tol;

    if (m11_zero && m22_zero) {
        out.family = ZeroDiscordFamily::TwoWayDiagonal;
        out.p[0] = 0.25 * (1.0 + x.m03 + x.m30 + x.m33);
        out.p[1] = 0.25 * (1.0 - x.m03 + x.m30 - x.m33);
        out.p[2] = 0.25 * (1.0 + x.m03 - x.m30 - x.m33);
        out.p[3] = 0.25 * (1.0 - x.m03 - x.m30 + x.m33);
        return out;
    }
    if (m22_zero && m33_zero) {
        if (m03_zero && m30_zero) {
            // Intersection of the two one-way families; diagonalizable by a
            // joint y-rotation, reported on the B side.
            out.family = ZeroDiscordFamily::OneWayB;
            out.a = 0.0;
            out.b = x.m11;
            return out;
        }
        if (m30_zero) {
            out.family = ZeroDiscordFamily::OneWayA;
            out.a = x.m03;
            out.b = x.m11;
            return out;
        }
        if (m03_zero) {
            out.family = ZeroDiscordFamily::OneWayB;
            out.a = x.m30;
            out.b = x.m11;
            return out;
        }
    }
    out.family = ZeroDiscordFamily::NotZero;
    return out;
}

double eof_complementary(const XStateCanonical& x) {
    return optimal_measurement(x).sa_min;
}

CorrelationEllipsoid boost_zI(const CorrelationEllipsoid& e, double t_mu) {
    if (std::abs(t_mu) >= 1.0) throw DomainError("boost_zI: |t| must be < 1");
    if (std::abs(e.zi - e.zc) > 1e-9)
        throw DomainError("boost_zI: expects the z_I = z_c gauge");
    CorrelationEllipsoid out = e;
    out.zi = e.zc + e.az * t_mu;
    return out;
}

bool ellipsoid_separable(const CorrelationEllipsoid& e, double tol) {
    const double lhs = (1.0 - e.az) * (1.0 - e.az) - e.zc * e.zc;
    const double rhs = (e.ax + e.ay) * (e.ax + e.ay);
    return lhs >= rhs - tol;
}

double max_separable_volume(double zc) {
    const double s = std::sqrt(1.0 + 3.0 * zc * zc);
    return (2.0 - s) * (2.0 - s) * (1.0 + s) / 54.0;
}

XStateCanonical special_family_state(SpecialFamily kind, const SpecialFamilyParams& p) {
    XStateCanonical x;
    switch (kind) {
        case SpecialFamily::Circular:
        case SpecialFamily::Spherical: {
            const double g1 = p.gamma1;
            double g2 = p.gamma2;
            if (kind == SpecialFamily::Spherical) {
                if (std::abs(std::abs(g2) - g1) > 1e-12)
                    throw DomainError("spherical family requires |gamma2| = gamma1");
            }
            if (g1 < 0.0 || std::abs(g2) > g1 + 1e-12)
                throw DomainError("family requires 0 <= |gamma2| <= gamma1");
            if (g1 + std::abs(g1 - g2) > 1.0 + 1e-12)
                throw DomainError("family violates the positivity condition");
            if (p.theta < 0.0 || p.theta >= M_PI_2)
                throw DomainError("family requires theta in [0, pi/2)");
            const double st = std::sin(p.theta);
            const double ct = std::cos(p.theta);
            x.m03 = st;
            x.m11 = g1 * ct;
            x.m22 = g2 * ct;
            x.m30 = g1 * st;
            x.m33 = g1;
            return x;
        }
        case SpecialFamily::BellMixture: {
            double sum = 0.0;
            for (double v : p.p) {
                if (v < -1e-12) throw DomainError("Bell mixture weights must be nonnegative");
                sum += v;
            }
            if (std::abs(sum - 1.0) > 1e-9)
                throw DomainError("Bell mixture weights must sum to 1");
            x.m11 = p.p[0] + p.p[2] - p.p[1] - p.p[3];
            x.m22 = p.p[0] + p.p[3] - p.p[1] - p.p[2];
            x.m33 = p.p[0] + p.p[1] - p.p[2] - p.p[3];
            return x;
        }
        case SpecialFamily::Linear: {
            if (p.gamma1 < 0.0 || std::abs(p.gamma2) > p.gamma1 + 1e-12)
                throw DomainError("linear family requires |gamma2| <= gamma1");
            if (p.gamma1 + std::abs(p.gamma2) >
                std::sqrt(std::max(0.0, 1.0 - p.gamma3 * p.gamma3)) + 1e-12)
                throw DomainError("linear family violates the positivity condition");
            if (p.theta < 0.0 || p.theta >= M_PI_2)
                throw DomainError("linear family requires theta in [0, pi/2)");
            const double st = std::sin(p.theta);
            const double ct = std::cos(p.theta);
            x.m03 = st;
            x.m11 = p.gamma1 * ct;
            x.m22 = p.gamma2 * ct;
            x.m30 = p.gamma3;
            x.m33 = p.gamma3 * st;
            return x;
        }
    }
    throw DomainError("unknown special family");
}

Correlations special_family_correlations(SpecialFamily kind, const SpecialFamilyParams& p) {
    const XStateCanonical x = special_family_state(kind, p);
    const XStateEigensystem es = xstate_eigensystem(canonical_gauge(x));
    const double s_ab = lambda_entropy(es);
    Correlations c;
    switch (kind) {
        case SpecialFamily::Circular:
        case SpecialFamily::Spherical: {
            const double st = std::sin(p.theta);
            c.sa_min = binary_entropy(p.gamma1);
            c.mutual = binary_entropy(p.gamma1 * st) + binary_entropy(st) - s_ab;
            c.classical = binary_entropy(p.gamma1 * st) - c.sa_min;
            c.discord = binary_entropy(st) + binary_entropy(p.gamma1) - s_ab;
            c.measurement.kind = MeasurementKind::VonNeumannZ;
            break;
        }
        case SpecialFamily::BellMixture: {
            const double longest =
                std::max({std::abs(x.m11), std::abs(x.m22), std::abs(x.m33)});
            c.sa_min = binary_entropy(longest);
            c.mutual = 2.0 - s_ab;
            c.classical = 1.0 - c.sa_min;
            c.discord = c.mutual - c.classical;
            c.measurement.kind = std::abs(x.m33) >= longest - 1e-15
                                     ? MeasurementKind::VonNeumannZ
                                     : MeasurementKind::VonNeumannX;
            break;
        }
        case SpecialFamily::Linear: {
            c.sa_min = binary_entropy(std::sqrt(x.m11 * x.m11 + x.m30 * x.m30));
            c.mutual = mutual_information(x);
            c.classical = binary_entropy(std::abs(x.m30)) - c.sa_min;
            c.discord = c.mutual - c.classical;
            c.measurement.kind = MeasurementKind::VonNeumannX;
            break;
        }
    }
    c.measurement.sa_min = c.sa_min;
    return c;
}

} // namespace qcorr
