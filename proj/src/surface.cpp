#include "clat/surface.hpp"

#include <cmath>
#include <string>

#include "clat/greens.hpp"  // theta_max, the open-sphere validity bound

namespace clat::surface {

namespace {

constexpr double pi = 3.14159265358979323846;

void check_ring_args(int n, double a) {
    if (n < 2) throw geometry_error("ring: need at least 2 emitters");
    if (!(a > 0.0)) throw geometry_error("ring: spacing must be > 0");
}

// central angle between two points given as (colatitude, azimuth), via the
// haversine form, which keeps full precision at small separations where
// acos of the dot product would lose half the digits
double central_angle(const std::array<double, 3>& p, const std::array<double, 3>& q) {
    double sdt = std::sin(0.5 * (p[0] - q[0]));
    double sdp = std::sin(0.5 * (p[1] - q[1]));
    double h = sdt * sdt + std::sin(p[0]) * std::sin(q[0]) * sdp * sdp;
    if (h > 1.0) h = 1.0;
    return 2.0 * std::asin(std::sqrt(h));
}

}  // namespace

optical_params optics_from_frac(double n0, double k_perp_frac) {
    if (!(k_perp_frac >= 0.0 && k_perp_frac < 1.0))
        throw domain_error("optics: k_perp_frac must be in [0, 1)");
    optical_params o{n0, k_perp_frac * k0 * n0};
    o.validate();
    return o;
}

emitter_array make_array(descriptor surf, std::vector<std::array<double, 3>> positions) {
    if (positions.size() < 2) throw geometry_error("emitter array: need at least 2 emitters");
    if (surf.k == kind::sphere) {
        for (const auto& p : positions)
            if (!(p[0] >= 0.0 && p[0] <= pi))
                throw geometry_error("emitter array: colatitude out of [0, pi]");
    }
    emitter_array arr{surf, std::move(positions)};
    distance_matrix dm = distances(arr);
    for (int i = 0; i < arr.count(); ++i) {
        for (int j = i + 1; j < arr.count(); ++j) {
            if (!(dm(i, j) > 0.0))
                throw geometry_error("emitter array: positions " + std::to_string(i) + " and " +
                                     std::to_string(j) + " coincide");
            if (surf.k == kind::sphere && dm(i, j) / surf.radius >= greens::theta_max)
                throw geometry_error("emitter array: positions " + std::to_string(i) + " and " +
                                     std::to_string(j) +
                                     " are separated beyond the open-form validity bound");
        }
    }
    return arr;
}

emitter_array ring_on_plane(int n, double a) {
    check_ring_args(n, a);
    double r = n * a / (2.0 * pi);
    std::vector<std::array<double, 3>> pos(n);
    for (int m = 0; m < n; ++m) {
        double phi = 2.0 * pi * m / n;
        pos[m] = {r * std::cos(phi), r * std::sin(phi), 0.0};
    }
    return make_array(descriptor::plane(), std::move(pos));
}

emitter_array ring_in_free3d(int n, double a) {
    emitter_array arr = ring_on_plane(n, a);
    arr.surf = descriptor::free3d();
    return arr;
}

emitter_array ring_on_sphere(int n, double a, double radius) {
    check_ring_args(n, a);
    descriptor surf = descriptor::sphere(radius);
    if (!(a < pi * radius))
        throw geometry_error("ring_on_sphere: neighbor geodesic exceeds half a great circle");
    // colatitude from sin(theta_c) = sin(a/(2R)) / sin(pi/N); no solution
    // means the ring cannot fit on the sphere at this spacing
    double s = std::sin(0.5 * a / radius) / std::sin(pi / n);
    if (s > 1.0)
        throw geometry_error("ring_on_sphere: ring does not fit (spacing too large for radius)");
    double theta_c = std::asin(s);
    std::vector<std::array<double, 3>> pos(n);
    for (int m = 0; m < n; ++m) pos[m] = {theta_c, 2.0 * pi * m / n, 0.0};
    return make_array(surf, std::move(pos));
}

distance_matrix distances(const emitter_array& arr) {
    const int n = arr.count();
    distance_matrix dm;
    dm.n = n;
    dm.d.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const auto& p = arr.positions[i];
            const auto& q = arr.positions[j];
            double dist;
            switch (arr.surf.k) {
                case kind::plane:
                    dist = std::hypot(p[0] - q[0], p[1] - q[1]);
                    break;
                case kind::free3d:
                    dist = std::hypot(p[0] - q[0], p[1] - q[1], p[2] - q[2]);
                    break;
                case kind::sphere:
                default:
                    dist = arr.surf.radius * central_angle(p, q);
                    break;
            }
            dm.d[static_cast<std::size_t>(i) * n + j] = dist;
            dm.d[static_cast<std::size_t>(j) * n + i] = dist;
        }
    }
    return dm;
}

double effective_wavenumber(const optical_params& optics, const descriptor& surf) {
    optics.validate();
    double kn = k0 * optics.n0;
    if (surf.k == kind::free3d) return kn;  // baseline: no confinement, no curvature
    double K = surf.gauss_K();
    double H = surf.mean_H();
    double k2 = kn * kn - optics.k_perp * optics.k_perp + K - 3.0 * H * H;
    if (!(k2 > 0.0))
        throw domain_error("effective wavenumber: k_eff^2 <= 0 (evanescent regime unsupported)");
    return std::sqrt(k2);
}

}  // namespace clat::surface
