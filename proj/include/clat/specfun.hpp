#pragma once
#include <complex>

#include "clat/series.hpp"

// Self-contained special functions: Bessel J0/Y0, Hankel H0^(1), the 2F1
// series with unit c-parameter, and Legendre P_nu/Q_nu of arbitrary real
// degree nu >= 0 with derivatives.  Everything is plain double; the oracle
// module certifies these against independent extended-precision sums.

namespace clat::specfun {

// Ascending series up to the crossover, Hankel-type asymptotic expansion
// beyond it.  The crossover sits where both branches stay inside the 1e-9
// certification budget; the unit tests measure the actual boundary gap.
inline constexpr double bessel_crossover = 12.0;

double bessel_j0(double x);                 // x >= 0
double bessel_y0(double x);                 // x > 0, log-singular at 0
std::complex<double> hankel1_0(double x);   // J0 + i Y0, x > 0

// 2F1(a, b; 1; z) by direct summation, z in [0, 1).  The only c we ever need
// is 1 (the Legendre representation), which keeps the term recurrence trivial.
double hyp2f1_unit_c(double a, double b, double z, series_control ctl = {});

// Degrees come from nu(nu+1) = keff^2 R^2, so only nu >= 0 is supported.
// Arguments with (1-x)/2 > 0.97 (central angles past ~160 deg) are rejected:
// the defining series is marginally convergent there and the surface model
// itself excludes the antipode.
double legendre_p(double nu, double x, series_control ctl = {});        // x in (-1, 1]
double legendre_q(double nu, double x, series_control ctl = {});        // x in (-1, 1)
double legendre_p_prime(double nu, double x, series_control ctl = {});  // x in (-1, 1)
double legendre_q_prime(double nu, double x, series_control ctl = {});  // x in (-1, 1)

// Integer and near-integer degree: |nu - n| < this snaps Q to the exact
// integer recurrence (the non-integer series loses digits against the
// removable singularity there).
inline constexpr double degree_snap = 1e-6;

double digamma(double x);  // x > 0; used by the Q series, handy in tests

}  // namespace clat::specfun
