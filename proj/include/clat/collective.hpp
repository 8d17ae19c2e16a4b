#pragma once
#include <Eigen/Core>
#include <complex>
#include <vector>

#include "clat/surface.hpp"

// Assembly of the normalized effective interaction matrix and its collective
// spectrum.  Everything is expressed in units of the single-emitter decay
// rate gamma, fixed by Im G at coincidence, so eigenvalue lambda carries the
// collective shift as Re lambda and the decay rate as 2 Im lambda.

namespace clat::collective {

// m_ii = i/2 exactly; m_ij = G(d_ij) / (2 Im G_coincidence).  Complex
// symmetric (m_ij = m_ji, no conjugation): photon exchange is reciprocal.
Eigen::MatrixXcd build_matrix(const surface::emitter_array& arr,
                              const surface::optical_params& optics);

// dense non-Hermitian eigenvalues (Hessenberg reduction + shifted complex
// QR underneath); order is the solver's, deterministic for fixed input
std::vector<std::complex<double>> eigenvalues(const Eigen::MatrixXcd& m);

struct mode {
    double shift;       // Re lambda, units gamma
    double gamma;       // 2 Im lambda clamped to [0, inf)
    bool superradiant;  // gamma > 1
};

struct spectrum_result {
    std::vector<mode> modes;                    // sorted by descending gamma
    std::vector<std::complex<double>> eigen;    // raw eigenvalues, solver order
};

// Negative 2 Im lambda beyond the family tolerance trips a numeric error.
// The plane/free kernels are positive semidefinite up to round-off, so their
// tolerance is tight; the sphere kernel genuinely loses semidefiniteness for
// non-integer degree (a curvature-model artifact, worst near wrapped rings),
// so its tolerance is wide.  In-tolerance negatives clamp to 0.
inline constexpr double gamma_floor_flat = -1e-10;
inline constexpr double gamma_floor_sphere = -0.5;

spectrum_result spectrum(const surface::emitter_array& arr,
                         const surface::optical_params& optics);

}  // namespace clat::collective
