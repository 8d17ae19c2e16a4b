#include "clat/oracle.hpp"

#include <cmath>
#include <cstdlib>

namespace clat::oracle {

// ---------------------------------------------------------------------------
// double-double primitives (Dekker/Knuth).  two_prod leans on fma, which every
// target we build for has in hardware.

namespace {

inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    double e = (a - (s - v)) + (b - v);
    return {s, e};
}

inline dd quick_two_sum(double a, double b) {
    // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd renorm(double hi, double lo) { return quick_two_sum(hi, lo); }

}  // namespace

dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    double lo = s.lo + a.lo + b.lo;
    return renorm(s.hi, lo);
}

dd dd_sub(dd a, dd b) { return dd_add(a, {-b.hi, -b.lo}); }

dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
    return renorm(p.hi, lo);
}

dd dd_div(dd a, dd b) {
    // one Newton correction on the double quotient is enough for dd accuracy
    double q1 = a.hi / b.hi;
    dd r = dd_sub(a, dd_mul({q1, 0.0}, b));
    double q2 = (r.hi + r.lo) / (b.hi + b.lo);
    return renorm(q1, q2);
}

const dd dd_pi    = {3.141592653589793, 1.2246467991473532e-16};
const dd dd_ln2   = {0.6931471805599453, 2.3190468138462996e-17};
const dd dd_euler = {0.5772156649015329, -4.942915152430645e-18};

dd dd_atanh(dd x) {
    // plain odd series; callers keep |x| small enough (<= ~0.6) that the
    // ~1e-32 tail is reached quickly
    dd x2 = dd_mul(x, x);
    dd term = x;
    dd sum = x;
    for (int k = 1; k < 200; ++k) {
        term = dd_mul(term, x2);
        dd contrib = dd_div(term, {2.0 * k + 1.0, 0.0});
        sum = dd_add(sum, contrib);
        if (std::fabs(contrib.hi) < 1e-34 * std::fabs(sum.hi)) break;
    }
    return sum;
}

dd dd_ln(dd x) {
    if (!(x.hi > 0.0)) throw domain_error("dd_ln: argument must be positive");
    // x = m 2^e with m in [1/sqrt2, sqrt2), ln x = e ln2 + 2 artanh((m-1)/(m+1))
    int e = 0;
    double m = std::frexp(x.hi, &e);  // m in [0.5, 1)
    if (m < 0.70710678118654752) {
        m *= 2.0;
        e -= 1;
    }
    double scale = std::ldexp(1.0, -e);
    dd md = dd_mul(x, {scale, 0.0});  // exact: power-of-two scaling
    dd t = dd_div(dd_sub(md, {1.0, 0.0}), dd_add(md, {1.0, 0.0}));
    dd at = dd_atanh(t);
    return dd_add(dd_mul({static_cast<double>(e), 0.0}, dd_ln2),
                  dd_mul({2.0, 0.0}, at));
}

void dd_sincospi(dd x, dd* s, dd* c) {
    // reduce to |f| <= 1/2 of a period around the nearest integer; the
    // subtraction is exact because round(x) is representable
    double n = std::nearbyint(x.hi);
    dd f = dd_sub(x, {n, 0.0});
    dd arg = dd_mul(f, dd_pi);  // |arg| <= pi/2
    dd a2 = dd_mul(arg, arg);
    // sin
    dd term = arg;
    dd sum = arg;
    for (int k = 1; k < 40; ++k) {
        term = dd_mul(term, a2);
        term = dd_div(term, {-(2.0 * k) * (2.0 * k + 1.0), 0.0});
        sum = dd_add(sum, term);
        if (std::fabs(term.hi) < 1e-35 * (std::fabs(sum.hi) + 1e-300)) break;
    }
    dd sv = sum;
    // cos
    term = {1.0, 0.0};
    sum = {1.0, 0.0};
    for (int k = 1; k < 40; ++k) {
        term = dd_mul(term, a2);
        term = dd_div(term, {-(2.0 * k - 1.0) * (2.0 * k), 0.0});
        sum = dd_add(sum, term);
        if (std::fabs(term.hi) < 1e-35) break;
    }
    dd cv = sum;
    // undo the shift by n: sin(pi(f+n)) = (-1)^n sin(pi f), same for cos
    bool odd = std::fmod(std::fabs(n), 2.0) == 1.0;
    if (odd) {
        sv = {-sv.hi, -sv.lo};
        cv = {-cv.hi, -cv.lo};
    }
    *s = sv;
    *c = cv;
}

// ---------------------------------------------------------------------------
// certified series

certified hp_bessel_j0(double x) {
    if (x < 0.0) throw domain_error("hp_bessel_j0: x must be >= 0");
    // sum (-x^2/4)^k / (k!)^2; alternating, so |first dropped term| bounds
    // the truncation
    dd q = dd_mul({-0.25, 0.0}, dd_mul({x, 0.0}, {x, 0.0}));
    dd term = {1.0, 0.0};
    dd sum = {1.0, 0.0};
    int used = 0;
    for (int k = 1; k < 400; ++k) {
        term = dd_div(dd_mul(term, q), {static_cast<double>(k) * k, 0.0});
        sum = dd_add(sum, term);
        used = k;
        if (std::fabs(term.hi) < 1e-34 * (std::fabs(sum.hi) + 1e-300)) break;
    }
    if (used >= 399) throw convergence_error("hp_bessel_j0: series did not settle", used);
    double bound = std::fabs(term.hi) + (used + 2.0) * 1e-30 * std::fabs(sum.hi) + 1e-300;
    return {to_double(sum), bound};
}

certified hp_bessel_y0(double x) {
    if (!(x > 0.0)) throw domain_error("hp_bessel_y0: x must be > 0");
    // (2/pi) [ (ln(x/2) + gamma) J0(x) + sum_{k>=1} (-1)^{k+1} H_k (x/2)^{2k}/(k!)^2 ]
    dd q = dd_mul({-0.25, 0.0}, dd_mul({x, 0.0}, {x, 0.0}));
    dd term = {1.0, 0.0};
    dd hk = {0.0, 0.0};
    dd tail = {0.0, 0.0};
    dd j0 = {1.0, 0.0};
    int used = 0;
    for (int k = 1; k < 400; ++k) {
        term = dd_div(dd_mul(term, q), {static_cast<double>(k) * k, 0.0});
        hk = dd_add(hk, dd_div({1.0, 0.0}, {static_cast<double>(k), 0.0}));
        j0 = dd_add(j0, term);
        tail = dd_sub(tail, dd_mul(term, hk));  // term carries (-1)^k, flip sign
        used = k;
        if (std::fabs(term.hi) * (std::fabs(hk.hi) + 1.0) <
            1e-34 * (std::fabs(tail.hi) + std::fabs(j0.hi)))
            break;
    }
    if (used >= 399) throw convergence_error("hp_bessel_y0: series did not settle", used);
    dd lg = dd_add(dd_ln(dd_mul({x, 0.0}, {0.5, 0.0})), dd_euler);
    dd inner = dd_add(dd_mul(lg, j0), tail);
    dd result = dd_div(dd_mul({2.0, 0.0}, inner), dd_pi);
    double bound = std::fabs(term.hi) * (std::fabs(hk.hi) + std::fabs(lg.hi) + 1.0) +
                   (used + 4.0) * 1e-30 * (std::fabs(result.hi) + 1.0);
    return {to_double(result), bound};
}

certified hp_hyp2f1(double a, double b, double z) {
    if (!(std::fabs(z) < 1.0)) throw domain_error("hp_hyp2f1: need |z| < 1");
    dd term = {1.0, 0.0};
    dd sum = {1.0, 0.0};
    dd zd = {z, 0.0};
    long used = 0;
    for (long k = 0; k < 200000; ++k) {
        dd num = dd_mul({a + k, 0.0}, {b + k, 0.0});
        dd den = {(k + 1.0) * (k + 1.0), 0.0};
        term = dd_mul(dd_div(dd_mul(term, num), den), zd);
        sum = dd_add(sum, term);
        used = k + 1;
        if (term.hi == 0.0) break;  // terminating polynomial (a or b hit a negative integer)
        if (k > 4 && std::fabs(term.hi) < 1e-34 * (std::fabs(sum.hi) + 1e-300)) break;
    }
    if (used >= 199999)
        throw convergence_error("hp_hyp2f1: z too close to 1", used);
    // the ratio test bound: remaining tail < |term| * z/(1-z) for the regimes
    // we certify (|z| <= 0.9); pad generously
    double tail = std::fabs(term.hi) * (1.0 + std::fabs(z) / (1.0 - std::fabs(z)));
    double bound = tail + (used + 2.0) * 1e-30 * (std::fabs(sum.hi) + 1.0);
    return {to_double(sum), bound};
}

certified hp_legendre_p(double nu, double x) {
    if (!(x > -1.0 && x <= 1.0)) throw domain_error("hp_legendre_p: x out of (-1, 1]");
    return hp_hyp2f1(-nu, nu + 1.0, 0.5 * (1.0 - x));
}

certified hp_legendre_q(double nu, double x) {
    if (!(x > -1.0 && x < 1.0)) throw domain_error("hp_legendre_q: x out of (-1, 1)");
    double nr = std::nearbyint(nu);
    if (nu == nr && nr >= 0.0) {
        // integer degree: forward recurrence from the closed forms, done in dd.
        // Stable upward on (-1,1) since Q_n decays and errors follow P_n growth
        // only mildly at these n.
        dd xd = {x, 0.0};
        dd q0 = dd_atanh(xd);
        if (std::fabs(x) > 0.6) {
            // artanh series slows above ~0.6; use ln form instead
            q0 = dd_mul({0.5, 0.0},
                        dd_ln(dd_div(dd_add({1.0, 0.0}, xd), dd_sub({1.0, 0.0}, xd))));
        }
        int n = static_cast<int>(nr);
        if (n == 0) return {to_double(q0), 1e-30 * std::fabs(to_double(q0)) + 1e-300};
        dd q1 = dd_sub(dd_mul(xd, q0), {1.0, 0.0});
        for (int k = 1; k < n; ++k) {
            dd t = dd_sub(dd_mul(dd_mul({2.0 * k + 1.0, 0.0}, xd), q1),
                          dd_mul({static_cast<double>(k), 0.0}, q0));
            dd next = dd_div(t, {k + 1.0, 0.0});
            q0 = q1;
            q1 = next;
        }
        double v = to_double(q1);
        return {v, (n + 2.0) * 1e-29 * (std::fabs(v) + 1.0)};
    }
    // non-integer: connection formula.  P_nu(-x) keeps us away from the
    // z -> 1 wall only for x bounded away from +1, which is all the oracle
    // certification points need.
    certified px = hp_legendre_p(nu, x);
    certified pm = hp_legendre_p(nu, -x);
    dd s, c;
    dd_sincospi({nu, 0.0}, &s, &c);
    if (std::fabs(s.hi) < 1e-12)
        throw numeric_error("hp_legendre_q: degree too close to integer for connection formula");
    dd pref = dd_div(dd_mul({0.5, 0.0}, dd_pi), s);
    dd val = dd_mul(pref, dd_sub(dd_mul(c, {px.value, 0.0}), {pm.value, 0.0}));
    double amp = std::fabs(pref.hi);
    double bound = amp * (px.bound + pm.bound) + 1e-29 * (std::fabs(val.hi) + 1.0);
    return {to_double(val), bound};
}

// ---------------------------------------------------------------------------

std::vector<std::complex<double>> circulant_eigenvalues(
    const std::vector<std::complex<double>>& row) {
    const std::size_t n = row.size();
    if (n < 2) throw domain_error("circulant_eigenvalues: need N >= 2");
    std::vector<std::complex<double>> out(n);
    const double step = 2.0 * 3.14159265358979323846 / static_cast<double>(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            // keep the phase argument small and exact: (k m) mod N fits easily
            std::size_t km = (k * m) % n;
            double ang = -step * static_cast<double>(km);
            acc += row[m] * std::complex<double>(std::cos(ang), std::sin(ang));
        }
        out[k] = acc;
    }
    return out;
}

double helmholtz_residual(const std::function<std::complex<double>(double)>& green,
                          laplacian_kind kind, double keff2,
                          double window_lo, double window_hi, double h,
                          double radius, int samples) {
    if (!(window_lo < window_hi) || !(h > 0.0))
        throw domain_error("helmholtz_residual: bad window or step");
    if (!(keff2 > 0.0)) throw domain_error("helmholtz_residual: need keff^2 > 0");
    double keff = std::sqrt(keff2);
    // step must resolve the oscillation; lambda_eff/100 is the contract
    double lam = 2.0 * 3.14159265358979323846 / keff;
    double scale = (kind == laplacian_kind::sphere_colat) ? radius : 1.0;
    if (h * scale > lam / 100.0)
        throw domain_error("helmholtz_residual: step too coarse for the wavelength");
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        double t = window_lo + (window_hi - window_lo) * i / (samples - 1.0);
        std::complex<double> gm = green(t - h);
        std::complex<double> g0 = green(t);
        std::complex<double> gp = green(t + h);
        std::complex<double> lap;
        if (kind == laplacian_kind::radial_2d) {
            lap = (gm - 2.0 * g0 + gp) / (h * h) + (gp - gm) / (2.0 * h * t);
        } else {
            lap = ((gm - 2.0 * g0 + gp) / (h * h) +
                   (gp - gm) / (2.0 * h) / std::tan(t)) /
                  (radius * radius);
        }
        double res = std::abs(lap + keff2 * g0) / (keff2 * std::abs(g0));
        if (res > worst) worst = res;
    }
    return worst;
}

}  // namespace clat::oracle
