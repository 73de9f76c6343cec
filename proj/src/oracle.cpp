#include "qcorr/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace qcorr {

namespace {

StokesVector stokes(double s0, double s1, double s2, double s3) {
    StokesVector v;
    v[0] = s0;
    v[1] = s1;
    v[2] = s2;
    v[3] = s3;
    return v;
}

// Three-element scheme: top element along +z plus a symmetric pair at polar
// angle theta below the equator of the measurement sphere.
std::vector<std::pair<double, StokesVector>> three_element_povm(double theta) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const double p0 = c / (1.0 + c);
    const double p1 = 0.5 / (1.0 + c);
    return {{2.0 * p0, stokes(1, 0, 0, 1)},
            {2.0 * p1, stokes(1, s, 0, -c)},
            {2.0 * p1, stokes(1, -s, 0, -c)}};
}

} // namespace

double povm_average_entropy(const MuellerMatrix& m,
                            const std::vector<std::pair<double, StokesVector>>& povm) {
    double total = 0.0;
    for (const auto& [weight, element] : povm) {
        if (weight <= 1e-15) continue;
        const StokesVector out = m.apply(element);
        const double prob = weight * out[0] / 2.0;
        if (prob <= 1e-15) continue;
        const double r = std::hypot(out[1] / out[0], out[2] / out[0], out[3] / out[0]);
        total += prob * binary_entropy(std::min(r, 1.0));
    }
    return total;
}

double brute_force_sa_min(const XStateCanonical& x, int grid_points) {
    const MuellerMatrix m = mueller_of_x(x);
    auto sa_of_theta = [&](double theta) {
        return povm_average_entropy(m, three_element_povm(theta));
    };

    // Both von Neumann projections (theta = 0 is the z projection in the
    // scheme's degenerate limit; evaluate it explicitly to avoid the 1/0).
    double best = povm_average_entropy(
        m, {{1.0, stokes(1, 0, 0, 1)}, {1.0, stokes(1, 0, 0, -1)}});
    best = std::min(best, povm_average_entropy(
                              m, {{1.0, stokes(1, 1, 0, 0)}, {1.0, stokes(1, -1, 0, 0)}}));

    double best_theta = -1.0;
    for (int i = 1; i < grid_points; ++i) {
        const double theta = M_PI_2 * i / grid_points;
        const double v = sa_of_theta(theta);
        if (v < best) {
            best = v;
            best_theta = theta;
        }
    }
    if (best_theta > 0.0) {
        // Golden-section refinement in the bracket around the best grid point.
        const double step = M_PI_2 / grid_points;
        double a = std::max(0.0, best_theta - step);
        double b = std::min(M_PI_2, best_theta + step);
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a);
        double x2 = a + gr * (b - a);
        double f1 = sa_of_theta(x1), f2 = sa_of_theta(x2);
        for (int it = 0; it < 100 && (b - a) > 1e-10; ++it) {
            if (f1 < f2) {
                b = x2; x2 = x1; f2 = f1;
                x1 = b - gr * (b - a);
                f1 = sa_of_theta(x1);
            } else {
                a = x1; x1 = x2; f1 = f2;
                x2 = a + gr * (b - a);
                f2 = sa_of_theta(x2);
            }
        }
        best = std::min(best, sa_of_theta(0.5 * (a + b)));
    }
    return best;
}

} // namespace qcorr
