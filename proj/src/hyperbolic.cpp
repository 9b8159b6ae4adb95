#include "confsurf/hyperbolic.hpp"

#include <cmath>

namespace confsurf {

HeightVector heights(const DecoratedMetric& m, const std::vector<double>& u) {
    HeightVector out;
    size_t n = m.radius.size();
    out.h.resize(n);
    out.eps.resize(n);
    for (size_t v = 0; v < n; ++v) {
        if (m.radius[v] > 0) {
            out.eps[v] = 1;
            out.h[v] = -(std::log(m.radius[v]) + u[v]);
        } else {
            out.eps[v] = 0;
            out.h[v] = -u[v];
        }
    }
    return out;
}

double lambda_length(double l, double hi, double hj, int epsi, int epsj) {
    double rhs = l * l * std::exp(hi + hj) - epsi * std::exp(hj - hi) -
                 epsj * std::exp(hi - hj);
    if (epsi == 1 && epsj == 1) {
        // cosh(lambda) = rhs/2, which is the inversive distance of the two
        // vertex circles; disjointness means it exceeds 1.
        if (!(rhs > 2.0))
            throw GeometryError("vertex spheres are not disjoint along the edge");
        return std::acosh(0.5 * rhs);
    }
    if (!(rhs > 0.0))
        throw GeometryError("vertex spheres are not disjoint along the edge");
    return std::log(rhs);
}

double hyperbolic_radius(double h, int eps) {
    return eps == 1 ? std::asinh(std::exp(h)) : h + std::log(2.0);
}

double lobachevsky(double x) {
    // Log-sine series: L(y) = y(1 - log|2y|) + sum_n zeta(2n)/(n(2n+1)) *
    // y (y/pi)^{2n}, valid on |y| <= pi/2 after reduction mod pi. 28 terms
    // leave a tail below 5e-21 at y = pi/2.
    static const double coeff[] = {
        0.54831135561607547882,   0.10823232337111381915,   0.048444907713545197129,
        0.027891037672165120538,  0.018199901365960328824,  0.012823667776324462158,
        0.0095243928393815114746, 0.0073530535460250636167, 0.0058479755397266959055,
        0.0047619093045811136800, 0.0039525701124525799515, 0.0033333335320272968375,
        0.0028490028914574211634, 0.0024630541963678177950, 0.0021505376364114568439,
        0.0018939393943803620897, 0.0016806722690053911275, 0.0015015015015233512341,
        0.0013495276653220485554, 0.0012195121951230603595, 0.0011074197120711266597,
        0.0010101010101010675186, 0.00092506938020352840967, 0.00085034013605442478972,
        0.00078431372549019677504, 0.00072568940493468811469, 0.00067340067340067343805,
        0.00062656641604010025932,
    };
    double y = std::remainder(x, M_PI);
    if (y == 0.0) return 0.0;
    double q = (y / M_PI) * (y / M_PI);
    double p = 1.0;
    double series = 0.0;
    for (double c : coeff) {
        p *= q;
        series += c * p;
    }
    return y * (1.0 - std::log(std::abs(2.0 * y)) + series);
}

double horoprism_volume(const std::array<double, 3>& theta,
                        const std::array<double, 3>& alpha) {
    if (std::abs(theta[0] + theta[1] + theta[2] - M_PI) > 1e-9)
        throw GeometryError("corner angles of the prism base must sum to pi");
    double twice = 0.0;
    for (int c = 0; c < 3; ++c) {
        // The two face-circle angles on the sides meeting corner c.
        double a1 = alpha[(c + 1) % 3];
        double a2 = alpha[(c + 2) % 3];
        double gp = 0.5 * (M_PI + a1 - a2 - theta[c]);
        double gpp = 0.5 * (M_PI - a1 + a2 - theta[c]);
        double mu = 0.5 * (M_PI + a1 + a2 - theta[c]);
        double nu = 0.5 * (M_PI - a1 - a2 - theta[c]);
        twice += lobachevsky(theta[c]) + lobachevsky(gp) + lobachevsky(gpp) +
                 lobachevsky(mu) + lobachevsky(nu);
    }
    return 0.5 * twice;
}

}  // namespace confsurf
