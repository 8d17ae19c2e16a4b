#pragma once
#include <complex>

#include "clat/series.hpp"

// Scalar surface Green functions (plane, sphere open/closed) plus the 3D
// free-space zz dyadic baseline for dipoles normal to the surface.  All
// depend on separation only; the divergent coincidence point is excluded
// and its imaginary part exposed as a separate constant per family.

namespace clat::greens {

// validity bound of the open-sphere form: it diverges at the antipode, so
// central angles past this are rejected
inline constexpr double theta_max = 2.7925268031909273;  // 160 deg

// lim_{sep->0} Im G for the surface family (plane and open sphere alike)
inline constexpr double coincidence_im_surface = 0.25;

// same limit for the free-space zz component
double coincidence_im_free3d(double k);  // k/(6 pi)

// (i/4) H0^(1)(k_eff r)
std::complex<double> green_plane(double r, double keff);

// (1/2pi) Q_nu(cos t) + (i/4) P_nu(cos t), nu from nu(nu+1) = (k_eff R)^2.
// Radiating (outgoing) solution; valid for t < theta_max.
std::complex<double> green_sphere_open(double theta, double radius, double keff,
                                       series_control ctl = {});

// (1/2pi) P_nu(-cos t): the standing-wave form, real, finite at the antipode
// (value 1/2pi) but log-singular at t -> 0 where its series stops converging.
double green_sphere_closed(double theta, double radius, double keff,
                           series_control ctl = {});

// (e^{ikr}/(4 pi r)) (1 + (ikr - 1)/(kr)^2): free-space dyadic zz component
// for dipole perpendicular to the separation
std::complex<double> green_free3d_zz(double r, double k);

// the non-negative root of nu(nu+1) = (keff R)^2; tends to keff*R for large
// arguments, which is what makes the sphere form collapse onto the plane one
double degree_from(double keff, double radius);

}  // namespace clat::greens
