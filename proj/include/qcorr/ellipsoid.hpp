#pragma once

// Correlation-ellipsoid geometry of two-qubit X-states and the
// single-variable optimal-measurement solver for quantum discord.
//
// The manifold of normalized conditional A-states over all B-side
// measurements is an axis-aligned ellipsoid with semi-axes (a_x, a_y, a_z),
// center (0, 0, z_c), and the image of the maximally mixed input at
// (0, 0, z_I). The minimum average conditional entropy over POVMs reduces to
// a one-variable problem on the x-z section.

#include <array>
#include <optional>
#include <vector>

#include "qcorr/mueller.hpp"

namespace qcorr {

struct CorrelationEllipsoid {
    double ax = 0.0; // semi-axes, gauge a_x >= a_y
    double ay = 0.0;
    double az = 0.0;
    double zc = 0.0; // center offset along z
    double zi = 0.0; // image of the maximally mixed input
    int det_sign = 1;
    bool axes_swapped = false; // set when the input had a_y > a_x
};

enum class MeasurementKind { VonNeumannZ, VonNeumannX, ThreeElement };

struct OptimalMeasurement {
    MeasurementKind kind = MeasurementKind::VonNeumannZ;
    double sa_min = 0.0; // bits
    // Conditional-state height and POVM angle; meaningful for ThreeElement.
    double z0 = 0.0;
    double theta = 0.0;
    std::vector<std::pair<double, StokesVector>> povm; // (weight, element)
};

struct Correlations {
    double discord = 0.0;
    double classical = 0.0;
    double mutual = 0.0;
    double sa_min = 0.0;
    OptimalMeasurement measurement;
};

// Ellipsoid degenerate below this a_z: the solver switches to the closed-form
// rules for linear/disc states.
constexpr double kDegenerateAz = 1e-9;
// Wedge-membership classification margin; boundary points classify as the
// von Neumann side.
constexpr double kWedgeMargin = 1e-9;

CorrelationEllipsoid ellipsoid_from_x(const XStateCanonical& x, double tol = kDefaultTol);

// Reconstructs the canonical X-state. For a_z > 0 the reconstruction is
// unique; at a_z = 0 the family is underdetermined and m03 = 0 is chosen.
XStateCanonical x_from_ellipsoid(const CorrelationEllipsoid& e, double tol = kDefaultTol);

// Average conditional entropy S^A(z) of the three-element scheme whose
// equatorial pair sits at height z, for z in [z_c - a_z, min(z_I, z_c + a_z)].
double cond_entropy_z(const CorrelationEllipsoid& e, double z);

// Derivative factor G with dS^A/dz = (z_c + a_z - z_I) G; independent of z_I.
double derivative_G(const CorrelationEllipsoid& e, double z);

// Closed-form wedge boundaries in a_x for given (a_z, z_c).
double boundary_ax_V(double az, double zc);
double boundary_ax_H(double az, double zc);

// Root of G in (z_c - a_z, z_c + a_z); empty unless a_x lies strictly inside
// the wedge (a_x^V, a_x^H).
std::optional<double> find_z0(const CorrelationEllipsoid& e);

// Optimal B-side measurement and S^A_min. The X-state overload retains the
// full state (needed when the ellipsoid degenerates); the ellipsoid overload
// reconstructs the state first.
OptimalMeasurement optimal_measurement(const XStateCanonical& x);
OptimalMeasurement optimal_measurement(const CorrelationEllipsoid& e);

// Average conditional entropy of the two-element von Neumann measurement at
// polar angle theta in the x-z plane.
double vn_entropy_theta(const XStateCanonical& x, double theta);

// Discord D, classical correlation C, mutual information I (bits), with
// D + C = I by construction.
Correlations correlations(const XStateCanonical& x);

enum class ZeroDiscordFamily { NotZero, OneWayA, OneWayB, TwoWayDiagonal };

struct ZeroDiscordClass {
    ZeroDiscordFamily family = ZeroDiscordFamily::NotZero;
    double a = 0.0, b = 0.0;           // one-way families
    std::array<double, 4> p{};         // diagonal family probabilities
};

// Matches an X-state against the zero-discord families. OneWayB states have
// vanishing discord under B-side measurements, OneWayA under A-side ones
// (the transposed-Mueller problem), TwoWayDiagonal under both.
ZeroDiscordClass classify_zero_discord(const DensityMatrix& rho, double tol = 1e-9);

// Koashi-Winter: entanglement of formation of the complementary 2x4 state
// equals S^A_min. In ebits.
double eof_complementary(const XStateCanonical& x);

// Moves z_I along the z-axis while keeping the ellipsoid shape fixed
// (the B-side boost orbit); expects the z_I = z_c gauge on input.
CorrelationEllipsoid boost_zI(const CorrelationEllipsoid& e, double t_mu);

// Separability is a property of the shape alone: (1-a_z)^2 - z_c^2 >= (a_x+a_y)^2.
bool ellipsoid_separable(const CorrelationEllipsoid& e, double tol = kDefaultTol);

// Largest Bloch-ball volume fraction of a separable ellipsoid with center
// offset z_c; equals 1/27 at z_c = 0.
double max_separable_volume(double zc);

enum class SpecialFamily { Circular, Spherical, BellMixture, Linear };

struct SpecialFamilyParams {
    // Circular: (gamma1, gamma2, theta) with gamma3 = gamma1.
    // Spherical: (gamma1, theta) with gamma2 = +/- gamma1 (sign of gamma2 kept).
    // BellMixture: probabilities p[0..3].
    // Linear: (gamma1, gamma2, gamma3, theta) with a_z = 0.
    double gamma1 = 0.0, gamma2 = 0.0, gamma3 = 0.0, theta = 0.0;
    std::array<double, 4> p{};
};

// Closed-form correlations for families that need no optimization.
Correlations special_family_correlations(SpecialFamily kind, const SpecialFamilyParams& params);

// Canonical X-state of a special family (also used to cross-check the
// closed forms against the general solver).
XStateCanonical special_family_state(SpecialFamily kind, const SpecialFamilyParams& params);

} // namespace qcorr
