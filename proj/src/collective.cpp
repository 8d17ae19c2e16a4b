#include "clat/collective.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "clat/errors.hpp"
#include "clat/greens.hpp"

namespace clat::collective {

Eigen::MatrixXcd build_matrix(const surface::emitter_array& arr,
                              const surface::optical_params& optics) {
    using surface::kind;
    const int n = arr.count();
    if (n < 2) throw geometry_error("build_matrix: need at least 2 emitters");
    const double keff = surface::effective_wavenumber(optics, arr.surf);
    const surface::distance_matrix dm = surface::distances(arr);

    Eigen::MatrixXcd m(n, n);
    const std::complex<double> half_i{0.0, 0.5};
    for (int i = 0; i < n; ++i) m(i, i) = half_i;

    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double d = dm(i, j);
            std::complex<double> g;
            switch (arr.surf.k) {
                case kind::plane:
                    g = greens::green_plane(d, keff) / (2.0 * greens::coincidence_im_surface);
                    break;
                case kind::free3d:
                    g = greens::green_free3d_zz(d, keff) /
                        (2.0 * greens::coincidence_im_free3d(keff));
                    break;
                case kind::sphere:
                default: {
                    double alpha = d / arr.surf.radius;
                    if (!(alpha < greens::theta_max))
                        throw geometry_error(
                            "build_matrix: emitter pair separation beyond the antipode "
                            "exclusion bound");
                    g = greens::green_sphere_open(alpha, arr.surf.radius, keff) /
                        (2.0 * greens::coincidence_im_surface);
                    break;
                }
            }
            m(i, j) = g;
            m(j, i) = g;
        }
    }
    return m;
}

std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXcd& m) {
    if (m.rows() < 2 || m.rows() != m.cols())
        throw domain_error("eigenvalues: need a square matrix, N >= 2");
    if (!m.allFinite()) throw numeric_error("eigenvalues: matrix has non-finite entries");
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw numeric_error("eigenvalues: QR iteration did not converge");
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

spectrum_result spectrum(const surface::emitter_array& arr,
                         const surface::optical_params& optics) {
    Eigen::MatrixXcd m = build_matrix(arr, optics);
    spectrum_result out;
    out.eigen = eigenvalues(m);
    const double floor = (arr.surf.k == surface::kind::sphere) ? gamma_floor_sphere
                                                               : gamma_floor_flat;
    out.modes.reserve(out.eigen.size());
    for (const auto& lam : out.eigen) {
        double g = 2.0 * lam.imag();
        if (g < floor)
            throw numeric_error("spectrum: decay rate " + std::to_string(g) +
                                " below the passivity floor (sign bug or broken kernel)");
        if (g < 0.0) g = 0.0;
        out.modes.push_back({lam.real(), g, g > 1.0});
    }
    // descending decay; stable so degenerate pairs keep the solver's
    // deterministic order and output bytes never wobble
    std::stable_sort(out.modes.begin(), out.modes.end(),
                     [](const mode& a, const mode& b) { return a.gamma > b.gamma; });
    return out;
}

}  // namespace clat::collective
