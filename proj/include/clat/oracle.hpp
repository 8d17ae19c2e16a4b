#pragma once
#include <complex>
#include <functional>
#include <vector>

#include "clat/errors.hpp"

// Independent verification engines. Nothing in here may call into the
// production specfun/greens/collective code paths: equivalence tests compare
// two implementations that share no arithmetic.

namespace clat::oracle {

// Double-double value: unevaluated sum hi + lo with |lo| <= ulp(hi)/2.
// Gives ~32 significant digits, enough to certify double-precision results
// to 1e-9 with honest margin. Not a general bigfloat; only what the series
// summation needs.
struct dd {
    double hi = 0.0;
    double lo = 0.0;

    dd() = default;
    dd(double h) : hi(h), lo(0.0) {}
    dd(double h, double l) : hi(h), lo(l) {}
};

dd dd_add(dd a, dd b);
dd dd_sub(dd a, dd b);
dd dd_mul(dd a, dd b);
dd dd_div(dd a, dd b);
dd dd_ln(dd x);      // natural log, x > 0
dd dd_atanh(dd x);   // |x| < 1
void dd_sincospi(dd x, dd* s, dd* c);  // sin(pi x), cos(pi x)

inline double to_double(dd a) { return a.hi + a.lo; }

// pi, ln 2, Euler gamma as hi/lo splits (each pair rounds the exact constant).
extern const dd dd_pi;
extern const dd dd_ln2;
extern const dd dd_euler;

// Extended-precision series value with a conservative error bound (truncation
// plus rounding budget).  bound is absolute.
struct certified {
    double value;
    double bound;
};

certified hp_bessel_j0(double x);            // ascending series, x in [0, ~14]
certified hp_bessel_y0(double x);            // ascending log series, x in (0, ~14]
certified hp_hyp2f1(double a, double b, double z);  // 2F1(a,b;1;z), |z| < 1
certified hp_legendre_p(double nu, double x);
certified hp_legendre_q(double nu, double x);  // connection formula / integer recurrence

// Eigenvalues of the circulant matrix with the given first row, by direct
// DFT summation: lambda_k = sum_m row[m] exp(-2 pi i k m / N).
std::vector<std::complex<double>> circulant_eigenvalues(
    const std::vector<std::complex<double>>& row);

enum class laplacian_kind {
    radial_2d,      // G'' + G'/r          (plane, radial symmetry)
    sphere_colat,   // (G'' + cot(t) G')/R^2  (sphere, azimuthal symmetry)
};

// Max over the window of |(Lap + keff^2) G| / (keff^2 |G|), central
// differences with step h.  green is sampled at separation r (plane) or
// central angle theta (sphere).  Checks the source-free Helmholtz equation,
// so the window must exclude the source itself.
double helmholtz_residual(const std::function<std::complex<double>(double)>& green,
                          laplacian_kind kind, double keff2,
                          double window_lo, double window_hi, double h,
                          double radius = 1.0, int samples = 41);

}  // namespace clat::oracle
