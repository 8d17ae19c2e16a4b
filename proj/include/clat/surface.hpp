#pragma once
#include <array>
#include <vector>

#include "clat/errors.hpp"

// Surface descriptors, the effective in-surface wavenumber, and emitter
// placement with geodesic pairwise distances.  All lengths are in units of
// lambda0, which pins k0 = 2 pi.

namespace clat::surface {

inline constexpr double k0 = 6.283185307179586;  // 2 pi, lambda0 units

enum class kind { plane, sphere, free3d };

struct descriptor {
    kind k = kind::plane;
    double radius = 0.0;  // sphere only

    static descriptor plane() { return {kind::plane, 0.0}; }
    static descriptor sphere(double R) {
        if (!(R > 0.0)) throw domain_error("sphere radius must be > 0");
        return {kind::sphere, R};
    }
    static descriptor free3d() { return {kind::free3d, 0.0}; }

    // curvature invariants; the free-space baseline bypasses the surface
    // formalism entirely and carries none
    double gauss_K() const { return k == kind::sphere ? 1.0 / (radius * radius) : 0.0; }
    double mean_H() const { return k == kind::sphere ? 1.0 / radius : 0.0; }
};

struct optical_params {
    double n0 = 1.0;
    double k_perp = 0.0;  // absolute, same units as k0

    void validate() const {
        if (!(n0 >= 1.0)) throw domain_error("optics: n0 must be >= 1");
        if (!(k_perp >= 0.0) || !(k_perp < k0 * n0))
            throw domain_error("optics: k_perp must be in [0, k0*n0)");
    }
};

// k_perp is usually specified as a fraction of k0*n0 (sweep axes use this)
optical_params optics_from_frac(double n0, double k_perp_frac);

// positions are surface coordinates:
//   plane  -> (x, y, unused)
//   sphere -> (colatitude, azimuth, unused)
//   free3d -> (x, y, z)
struct emitter_array {
    descriptor surf;
    std::vector<std::array<double, 3>> positions;

    int count() const { return static_cast<int>(positions.size()); }
};

emitter_array make_array(descriptor surf, std::vector<std::array<double, 3>> positions);

// N emitters equally spaced on a circle of circumference N*a, so the
// neighbor arc spacing is a (the chord is slightly shorter).
emitter_array ring_on_plane(int n, double a);

// N emitters on a common-colatitude circle with neighbor geodesic exactly a.
// Solvability: sin(a/(2R)) <= sin(pi/N), i.e. the ring must fit inside a
// great circle.  As R -> infinity this tends to a planar ring with *chord*
// spacing a (circumradius a / (2 sin(pi/N))), which differs from
// ring_on_plane's arc-pinned circle at any finite N.
emitter_array ring_on_sphere(int n, double a, double radius);

// same ring in 3D space (the free-space baseline of the canned presets)
emitter_array ring_in_free3d(int n, double a);

struct distance_matrix {
    int n = 0;
    std::vector<double> d;  // row-major n*n, geodesic separations

    double operator()(int i, int j) const { return d[static_cast<std::size_t>(i) * n + j]; }
};

distance_matrix distances(const emitter_array& arr);

// sqrt(k0^2 n0^2 - k_perp^2 + K - 3 H^2); the sphere's curvature correction
// is K - 3H^2 = -2/R^2.  Throws on the evanescent regime k_eff^2 <= 0.
double effective_wavenumber(const optical_params& optics, const descriptor& surf);

}  // namespace clat::surface
