#include "clat/specfun.hpp"

#include <cmath>

#include "clat/errors.hpp"

namespace clat::specfun {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double euler_gamma = 0.57721566490153286061;

// Kahan accumulator: the ascending Bessel series suffer heavy cancellation
// near the crossover (terms peak ~4e3 above the result at x=12), and plain
// summation would eat the last four digits.
struct kahan {
    double s = 0.0;
    double c = 0.0;
    void add(double v) {
        double y = v - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

double j0_ascending(double x) {
    const double q = -0.25 * x * x;
    double term = 1.0;
    kahan acc;
    acc.add(1.0);
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        acc.add(term);
        if (std::fabs(term) < 1e-17 * std::fabs(acc.s) + 1e-300) break;
    }
    return acc.s;
}

double y0_ascending(double x) {
    const double q = -0.25 * x * x;
    double term = 1.0;
    double hk = 0.0;
    kahan tail;
    for (int k = 1; k < 200; ++k) {
        term *= q / (static_cast<double>(k) * k);
        hk += 1.0 / k;
        tail.add(-term * hk);  // (-1)^{k+1} H_k (x/2)^{2k}/(k!)^2; term carries (-1)^k
        if (std::fabs(term) * (hk + 1.0) < 1e-17 * (std::fabs(tail.s) + 1.0)) break;
    }
    double j0 = j0_ascending(x);
    return (2.0 / pi) * ((std::log(0.5 * x) + euler_gamma) * j0 + tail.s);
}

// H0^(1)(x) ~ sqrt(2/(pi x)) e^{i(x - pi/4)} sum_k A_k (-i)^k / x^k with
// A_k = ((2k-1)!!)^2 / (k! 8^k).  The series is asymptotic: stop at the
// smallest term (or at 1e-17), never past it.
std::complex<double> h0_asymptotic(double x) {
    double re_s = 1.0, im_s = 0.0;
    double A = 1.0;
    double prev = 1.0;
    for (int k = 1; k < 40; ++k) {
        A *= static_cast<double>(2 * k - 1) * (2 * k - 1) / (8.0 * k);
        double mag = A / std::pow(x, k);
        if (mag > prev) break;
        prev = mag;
        // (-i)^k cycles 1, -i, -1, i
        switch (k & 3) {
            case 0: re_s += mag; break;
            case 1: im_s -= mag; break;
            case 2: re_s -= mag; break;
            case 3: im_s += mag; break;
        }
        if (mag < 1e-17) break;
    }
    double amp = std::sqrt(2.0 / (pi * x));
    double w = x - 0.25 * pi;
    double cw = std::cos(w), sw = std::sin(w);
    return {amp * (cw * re_s - sw * im_s), amp * (sw * re_s + cw * im_s)};
}

void check_degree(double nu, const char* who) {
    if (!(nu >= 0.0) || !std::isfinite(nu))
        throw domain_error(std::string(who) + ": degree must be finite and >= 0");
}

// shared antipode exclusion: series argument z = (1-x)/2
constexpr double z_exclusion = 0.97;

}  // namespace

double bessel_j0(double x) {
    if (!(x >= 0.0)) throw domain_error("bessel_j0: x must be >= 0");
    if (x <= bessel_crossover) return j0_ascending(x);
    return h0_asymptotic(x).real();
}

double bessel_y0(double x) {
    if (!(x > 0.0)) throw domain_error("bessel_y0: x must be > 0");
    if (x <= bessel_crossover) return y0_ascending(x);
    return h0_asymptotic(x).imag();
}

std::complex<double> hankel1_0(double x) {
    if (!(x > 0.0)) throw domain_error("hankel1_0: x must be > 0");
    if (x <= bessel_crossover) return {j0_ascending(x), y0_ascending(x)};
    return h0_asymptotic(x);
}

double hyp2f1_unit_c(double a, double b, double z, series_control ctl) {
    ctl.validate();
    if (!(z >= 0.0 && z < 1.0)) throw domain_error("hyp2f1_unit_c: need z in [0, 1)");
    double term = 1.0;
    kahan acc;
    acc.add(1.0);
    for (long k = 0; k < ctl.max_terms; ++k) {
        term *= (a + k) * (b + k) * z / ((k + 1.0) * (k + 1.0));
        if (term == 0.0) return acc.s;  // terminating polynomial case
        acc.add(term);
        if (k > 3 && std::fabs(term) < ctl.rel_tol * (std::fabs(acc.s) + 1e-300))
            return acc.s;
    }
    throw convergence_error("hyp2f1_unit_c: series did not converge (z too close to 1?)",
                            ctl.max_terms);
}

double legendre_p(double nu, double x, series_control ctl) {
    check_degree(nu, "legendre_p");
    if (!(x > -1.0 && x <= 1.0)) throw domain_error("legendre_p: x out of (-1, 1]");
    double z = 0.5 * (1.0 - x);
    if (z > z_exclusion)
        throw convergence_error("legendre_p: argument inside the antipode exclusion zone", 0);
    return hyp2f1_unit_c(-nu, nu + 1.0, z, ctl);
}

double digamma(double x) {
    if (!(x > 0.0)) throw domain_error("digamma: x must be > 0");
    // recurrence up into the asymptotic zone, then the Bernoulli expansion
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    double inv = 1.0 / x;
    double inv2 = inv * inv;
    double asy = std::log(x) - 0.5 * inv -
                 inv2 * (1.0 / 12 -
                         inv2 * (1.0 / 120 -
                                 inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 / 132))));
    return acc + asy;
}

namespace {

// Q_nu for non-integer nu and x >= 0, where the connection formula is useless:
// its reflected-argument series sits inside the antipode exclusion precisely
// when the Green function needs Q near x = 1.  Instead sum the log form
//   Q_nu(x) = -(gamma + psi(nu+1)) F(z) - (1/2)[F(z) ln z + sum_k T_k h_k z^k]
// with F = 2F1(-nu, nu+1; 1; z), T_k the F series terms, and
// h_k = sum_{j<k} [1/(j-nu) + 1/(j+nu+1) - 2/(j+1)].  Reduces to artanh(x)
// at nu=0 and to x artanh(x) - 1 at nu=1, which the tests pin.
double q_logseries(double nu, double x, const series_control& ctl) {
    const double z = 0.5 * (1.0 - x);
    const double a = -nu, b = nu + 1.0;
    double term = 1.0;
    double h = 0.0;
    kahan F;
    F.add(1.0);
    kahan U;
    bool settled = false;
    long used = 0;
    for (long k = 1; k < ctl.max_terms; ++k) {
        term *= (a + k - 1) * (b + k - 1) * z / (static_cast<double>(k) * k);
        h += 1.0 / (a + k - 1) + 1.0 / (b + k - 1) - 2.0 / k;
        F.add(term);
        U.add(term * h);
        used = k;
        if (k > 3 && std::fabs(term) * (std::fabs(h) + 1.0) <
                         ctl.rel_tol * (std::fabs(F.s) + std::fabs(U.s) + 1.0)) {
            settled = true;
            break;
        }
    }
    if (!settled)
        throw convergence_error("legendre_q: log-form series did not converge", used);
    double alpha = -(euler_gamma + digamma(nu + 1.0));
    return alpha * F.s - 0.5 * (F.s * std::log(z) + U.s);
}

double q_integer(int n, double x) {
    double q0 = std::atanh(x);
    if (n == 0) return q0;
    double q1 = x * q0 - 1.0;
    for (int k = 1; k < n; ++k) {
        double next = ((2.0 * k + 1.0) * x * q1 - k * q0) / (k + 1.0);
        q0 = q1;
        q1 = next;
    }
    return q1;
}

// sin/cos of nu*pi with the argument reduced before the multiply, so large
// degrees don't lose the small fractional part
void sincos_nupi(double nu, double* s, double* c) {
    double n = std::nearbyint(nu);
    double f = nu - n;
    double sf = std::sin(f * pi), cf = std::cos(f * pi);
    bool odd = std::fmod(std::fabs(n), 2.0) == 1.0;
    *s = odd ? -sf : sf;
    *c = odd ? -cf : cf;
}

}  // namespace

double legendre_q(double nu, double x, series_control ctl) {
    check_degree(nu, "legendre_q");
    ctl.validate();
    if (!(x > -1.0 && x < 1.0)) throw domain_error("legendre_q: x out of (-1, 1)");
    if (0.5 * (1.0 - x) > z_exclusion)
        throw convergence_error("legendre_q: argument inside the antipode exclusion zone", 0);
    double n = std::nearbyint(nu);
    if (std::fabs(nu - n) < degree_snap) return q_integer(static_cast<int>(n), x);
    if (x >= 0.0) return q_logseries(nu, x, ctl);
    // x < 0: the connection formula is well-conditioned here (the reflected
    // argument -x is on the fast side of the series)
    double s, c;
    sincos_nupi(nu, &s, &c);
    double px = legendre_p(nu, x, ctl);
    double pm = legendre_p(nu, -x, ctl);
    return 0.5 * pi / s * (c * px - pm);
}

double legendre_p_prime(double nu, double x, series_control ctl) {
    check_degree(nu, "legendre_p_prime");
    ctl.validate();
    if (!(x > -1.0 && x < 1.0)) throw domain_error("legendre_p_prime: x out of (-1, 1)");
    double z = 0.5 * (1.0 - x);
    if (z > z_exclusion)
        throw convergence_error("legendre_p_prime: argument inside the antipode exclusion zone", 0);
    // d/dx F(z(x)) = -F'(z)/2 with F'(z) = sum_k k C_k z^{k-1}
    const double a = -nu, b = nu + 1.0;
    double coef = 1.0;   // C_k, coefficient without the z power
    double zpow = 1.0;   // z^{k-1}
    kahan acc;
    for (long k = 1; k < ctl.max_terms; ++k) {
        coef *= (a + k - 1) * (b + k - 1) / (static_cast<double>(k) * k);
        if (coef == 0.0) break;
        double contrib = k * coef * zpow;
        acc.add(contrib);
        zpow *= z;
        if (k > 3 && std::fabs(contrib) < ctl.rel_tol * (std::fabs(acc.s) + 1e-300))
            return -0.5 * acc.s;
    }
    if (std::fabs(coef) == 0.0) return -0.5 * acc.s;  // terminated polynomial
    throw convergence_error("legendre_p_prime: series did not converge", ctl.max_terms);
}

double legendre_q_prime(double nu, double x, series_control ctl) {
    check_degree(nu, "legendre_q_prime");
    ctl.validate();
    if (!(x > -1.0 && x < 1.0)) throw domain_error("legendre_q_prime: x out of (-1, 1)");
    if (0.5 * (1.0 - x) > z_exclusion)
        throw convergence_error("legendre_q_prime: argument inside the antipode exclusion zone", 0);
    double n = std::nearbyint(nu);
    if (std::fabs(nu - n) < degree_snap) {
        int m = static_cast<int>(n);
        if (m == 0) return 1.0 / (1.0 - x * x);
        // (1-x^2) Q'_n = n (Q_{n-1} - x Q_n)
        return m * (q_integer(m - 1, x) - x * q_integer(m, x)) / (1.0 - x * x);
    }
    if (x < 0.0) {
        // differentiated connection formula; d/dx P_nu(-x) = -P'_nu(-x)
        double s, c;
        sincos_nupi(nu, &s, &c);
        double dpx = legendre_p_prime(nu, x, ctl);
        double dpm = legendre_p_prime(nu, -x, ctl);
        return 0.5 * pi / s * (c * dpx + dpm);
    }
    // term-differentiated log form: dQ/dx = -1/2 [ alpha F' - (F' ln z + F/z + U')/2 ]
    const double z = 0.5 * (1.0 - x);
    const double a = -nu, b = nu + 1.0;
    double coef = 1.0;
    double h = 0.0;
    double zpow_prev = 1.0;  // z^{k-1}
    kahan F, Fp, Up;
    F.add(1.0);
    bool settled = false;
    for (long k = 1; k < ctl.max_terms; ++k) {
        coef *= (a + k - 1) * (b + k - 1) / (static_cast<double>(k) * k);
        h += 1.0 / (a + k - 1) + 1.0 / (b + k - 1) - 2.0 / k;
        double tk = coef * zpow_prev * z;  // full term C_k z^k
        F.add(tk);
        Fp.add(k * coef * zpow_prev);
        Up.add(k * coef * h * zpow_prev);
        zpow_prev *= z;
        if (k > 3 && std::fabs(coef * zpow_prev) * (std::fabs(h) + k) <
                         ctl.rel_tol * (std::fabs(Fp.s) + std::fabs(Up.s) + 1.0)) {
            settled = true;
            break;
        }
    }
    if (!settled)
        throw convergence_error("legendre_q_prime: series did not converge", ctl.max_terms);
    double alpha = -(euler_gamma + digamma(nu + 1.0));
    double dqdz = alpha * Fp.s - 0.5 * (Fp.s * std::log(z) + F.s / z + Up.s);
    return -0.5 * dqdz;
}

}  // namespace clat::specfun
