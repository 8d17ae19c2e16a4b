#include "clat/greens.hpp"

#include <cmath>

#include "clat/errors.hpp"
#include "clat/specfun.hpp"

namespace clat::greens {

namespace {
constexpr double pi = 3.14159265358979323846;
}

double coincidence_im_free3d(double k) {
    if (!(k > 0.0)) throw domain_error("coincidence_im_free3d: k must be > 0");
    return k / (6.0 * pi);
}

double degree_from(double keff, double radius) {
    if (!(keff > 0.0) || !(radius > 0.0))
        throw domain_error("degree_from: keff and radius must be > 0");
    double kr = keff * radius;
    return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * kr * kr));
}

std::complex<double> green_plane(double r, double keff) {
    if (!(r > 0.0)) throw domain_error("green_plane: separation must be > 0");
    if (!(keff > 0.0)) throw domain_error("green_plane: keff must be > 0");
    std::complex<double> h = specfun::hankel1_0(keff * r);
    // i/4 * (J + iY) = (-Y + iJ)/4
    return {-0.25 * h.imag(), 0.25 * h.real()};
}

std::complex<double> green_sphere_open(double theta, double radius, double keff,
                                       series_control ctl) {
    if (!(theta > 0.0) || !(theta < theta_max))
        throw domain_error("green_sphere_open: central angle out of (0, 160 deg)");
    double nu = degree_from(keff, radius);
    double x = std::cos(theta);
    return {specfun::legendre_q(nu, x, ctl) / (2.0 * pi),
            0.25 * specfun::legendre_p(nu, x, ctl)};
}

double green_sphere_closed(double theta, double radius, double keff, series_control ctl) {
    if (!(theta > 0.0) || !(theta <= pi))
        throw domain_error("green_sphere_closed: central angle out of (0, pi]");
    double nu = degree_from(keff, radius);
    // series convergence excludes the near-source zone automatically: the
    // reflected argument -cos t approaches +1's exclusion there
    return specfun::legendre_p(nu, -std::cos(theta), ctl) / (2.0 * pi);
}

std::complex<double> green_free3d_zz(double r, double k) {
    if (!(r > 0.0)) throw domain_error("green_free3d_zz: separation must be > 0");
    if (!(k > 0.0)) throw domain_error("green_free3d_zz: k must be > 0");
    double u = k * r;
    std::complex<double> iu{0.0, u};
    std::complex<double> phase{std::cos(u), std::sin(u)};
    return phase / (4.0 * pi * r) * (1.0 + (iu - 1.0) / (u * u));
}

}  // namespace clat::greens
