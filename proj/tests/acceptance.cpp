// Acceptance gate: ten numbered end-to-end checks, one PASS/FAIL line each.
// Run with no arguments for all ten, or pass criterion numbers to select.
// Exit status is the number of failures.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "clat/collective.hpp"
#include "clat/errors.hpp"
#include "clat/greens.hpp"
#include "clat/oracle.hpp"
#include "clat/specfun.hpp"
#include "clat/surface.hpp"
#include "clat/sweep.hpp"

using namespace clat;
using cplx = std::complex<double>;

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double deg = pi / 180.0;

// pinned tolerances
constexpr double tol_spot = 1e-9;        // special-function spot values vs oracle
constexpr double tol_wronskian = 1e-8;   // relative
constexpr double tol_coincidence = 1e-4; // relative
constexpr double tol_plane_limit = 1e-2; // relative, at R = 1000
constexpr double tol_residual = 1e-3;    // relative helmholtz residual at h = 1e-3
constexpr double ratio_lo = 3.2, ratio_hi = 4.8;  // second-order h-halving, 4 +- 20%
constexpr double tol_eigen = 1e-8;       // eigensolver vs circulant oracle
constexpr double tol_trace = 1e-8;       // relative
constexpr double tol_dicke = 1e-3;
constexpr double ratio_pair_tol = 0.3;   // waveguide/free contrast, 2x +- 30%

struct outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

double rel_dev(double got, double want) {
    return std::fabs(got - want) / (1.0 + std::fabs(want));
}

// greedy nearest-neighbor multiset distance, both lists consumed
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    double worst = 0.0;
    for (const cplx& x : a) {
        auto best = std::min_element(b.begin(), b.end(), [&](const cplx& u, const cplx& v) {
            return std::abs(u - x) < std::abs(v - x);
        });
        worst = std::max(worst, std::abs(*best - x));
        b.erase(best);
    }
    return worst;
}

outcome criterion_1() {
    const double grid_nu[] = {0.0, 0.3, 1.0, 1.7, 5.2};
    const double grid_x[] = {-0.8, -0.3, 0.0, 0.3, 0.8};

    double worst_spot = rel_dev(specfun::bessel_j0(1.0), oracle::hp_bessel_j0(1.0).value);
    worst_spot = std::max(worst_spot,
                          rel_dev(specfun::bessel_y0(1.0), oracle::hp_bessel_y0(1.0).value));
    double worst_wron = 0.0;
    for (double nu : grid_nu) {
        for (double x : grid_x) {
            worst_spot = std::max(
                worst_spot, rel_dev(specfun::legendre_p(nu, x), oracle::hp_legendre_p(nu, x).value));
            worst_spot = std::max(
                worst_spot, rel_dev(specfun::legendre_q(nu, x), oracle::hp_legendre_q(nu, x).value));
            double want = 1.0 / (1.0 - x * x);
            double got = specfun::legendre_p(nu, x) * specfun::legendre_q_prime(nu, x) -
                         specfun::legendre_p_prime(nu, x) * specfun::legendre_q(nu, x);
            worst_wron = std::max(worst_wron, std::fabs(got - want) / std::fabs(want));
        }
    }
    bool pass = worst_spot < tol_spot && worst_wron < tol_wronskian;
    return {pass, fmt("oracle spot dev %.2e (tol %.0e), wronskian dev %.2e (tol %.0e) "
                      "over the 5x5 grid",
                      worst_spot, tol_spot, worst_wron, tol_wronskian)};
}

outcome criterion_2() {
    const double sep = 1e-6;
    const double keff_p = surface::effective_wavenumber(surface::optics_from_frac(1.0, 0.9),
                                                        surface::descriptor::plane());
    const double keff_s = surface::effective_wavenumber(surface::optics_from_frac(1.0, 0.9),
                                                        surface::descriptor::sphere(1.0));
    double dp = std::fabs(greens::green_plane(sep, keff_p).imag() -
                          greens::coincidence_im_surface) /
                greens::coincidence_im_surface;
    double ds = std::fabs(greens::green_sphere_open(sep, 1.0, keff_s).imag() -
                          greens::coincidence_im_surface) /
                greens::coincidence_im_surface;
    double want_f = greens::coincidence_im_free3d(surface::k0);
    double df = std::fabs(greens::green_free3d_zz(sep, surface::k0).imag() - want_f) / want_f;
    bool pass = dp < tol_coincidence && ds < tol_coincidence && df < tol_coincidence;
    return {pass, fmt("Im G at separation 1e-6: plane dev %.2e, sphere dev %.2e, "
                      "free dev %.2e (tol %.0e)",
                      dp, ds, df, tol_coincidence)};
}

outcome criterion_3() {
    const double keff = surface::effective_wavenumber(surface::optics_from_frac(1.0, 0.9),
                                                      surface::descriptor::plane());
    const double radii[] = {10.0, 100.0, 1000.0};
    bool monotone = true;
    double worst_final = 0.0;
    for (double u : {0.5, 1.0, 2.0, 5.0}) {
        double s = u / keff;
        cplx gp = greens::green_plane(s, keff);
        double prev = 1e300;
        for (double R : radii) {
            double dev = std::abs(greens::green_sphere_open(s / R, R, keff) - gp) / std::abs(gp);
            if (dev >= prev) monotone = false;
            prev = dev;
        }
        worst_final = std::max(worst_final, prev);
    }
    bool pass = monotone && worst_final < tol_plane_limit;
    return {pass, fmt("sphere->plane deviation %s in R; worst at R=1000 is %.2e (tol %.0e)",
                      monotone ? "monotone decreasing" : "NOT monotone", worst_final,
                      tol_plane_limit)};
}

outcome criterion_4() {
    const double keff_p = surface::effective_wavenumber(surface::optics_from_frac(1.0, 0.9),
                                                        surface::descriptor::plane());
    const double keff2_s = 4.0 * pi * pi * 0.19 - 2.0;  // unit sphere, k_perp = 0.9 k0
    const double keff_s = std::sqrt(keff2_s);

    auto gp = [&](double r) { return greens::green_plane(r, keff_p); };
    auto gs = [&](double t) { return greens::green_sphere_open(t, 1.0, keff_s); };

    double rp = oracle::helmholtz_residual(gp, oracle::laplacian_kind::radial_2d,
                                           keff_p * keff_p, 1.0 / keff_p, 10.0 / keff_p,
                                           1e-3, 1.0, 41);
    double rs = oracle::helmholtz_residual(gs, oracle::laplacian_kind::sphere_colat, keff2_s,
                                           20.0 * deg, 140.0 * deg, 1e-3, 1.0, 25);

    double rp4 = oracle::helmholtz_residual(gp, oracle::laplacian_kind::radial_2d,
                                            keff_p * keff_p, 1.0 / keff_p, 10.0 / keff_p,
                                            4e-3, 1.0, 41);
    double rp2 = oracle::helmholtz_residual(gp, oracle::laplacian_kind::radial_2d,
                                            keff_p * keff_p, 1.0 / keff_p, 10.0 / keff_p,
                                            2e-3, 1.0, 41);
    double rs4 = oracle::helmholtz_residual(gs, oracle::laplacian_kind::sphere_colat, keff2_s,
                                            20.0 * deg, 140.0 * deg, 4e-3, 1.0, 25);
    double rs2 = oracle::helmholtz_residual(gs, oracle::laplacian_kind::sphere_colat, keff2_s,
                                            20.0 * deg, 140.0 * deg, 2e-3, 1.0, 25);
    double ratio_p = rp4 / rp2;
    double ratio_s = rs4 / rs2;

    bool pass = rp < tol_residual && rs < tol_residual && ratio_p > ratio_lo &&
                ratio_p < ratio_hi && ratio_s > ratio_lo && ratio_s < ratio_hi;
    return {pass, fmt("plane residual %.2e, sphere residual %.2e (tol %.0e); "
                      "h-halving ratios %.2f / %.2f (want %.1f..%.1f)",
                      rp, rs, tol_residual, ratio_p, ratio_s, ratio_lo, ratio_hi)};
}

outcome criterion_5() {
    double worst_eig = 0.0, worst_trace = 0.0;
    for (int n : {2, 4, 8, 16}) {
        struct setup {
            surface::emitter_array arr;
            surface::optical_params opt;
        };
        setup cases[] = {
            {surface::ring_on_plane(n, 0.4), surface::optics_from_frac(1.0, 0.3)},
            {surface::ring_on_sphere(n, 0.3, 2.0), surface::optics_from_frac(1.0, 0.5)},
        };
        for (const auto& c : cases) {
            Eigen::MatrixXcd m = collective::build_matrix(c.arr, c.opt);
            std::vector<cplx> row(static_cast<std::size_t>(n));
            for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = m(0, j);
            auto got = collective::eigenvalues(m);
            auto want = oracle::circulant_eigenvalues(row);
            worst_eig = std::max(worst_eig, multiset_distance(got, want));
            double total = 0.0;
            for (const auto& lam : got) total += 2.0 * lam.imag();
            worst_trace = std::max(worst_trace, std::fabs(total - n) / n);
        }
    }
    bool pass = worst_eig < tol_eigen && worst_trace < tol_trace;
    return {pass, fmt("rings N in {2,4,8,16} on plane and sphere: eigenvalue dev %.2e "
                      "vs circulant oracle, trace dev %.2e (tol %.0e)",
                      worst_eig, worst_trace, tol_eigen)};
}

outcome criterion_6() {
    auto arr = surface::make_array(surface::descriptor::free3d(),
                                   {{0.0, 0.0, 0.0}, {1e-4, 0.0, 0.0}});
    auto sp = collective::spectrum(arr, surface::optics_from_frac(1.0, 0.0));
    double top = sp.modes.front().gamma;
    double bottom = sp.modes.back().gamma;
    bool pass = std::fabs(top - 2.0) < tol_dicke && bottom < tol_dicke;
    return {pass, fmt("two emitters at 1e-4 apart: gammas {%.7f, %.2e}, want {2, 0} "
                      "within %.0e",
                      top, bottom, tol_dicke)};
}

outcome criterion_7() {
    auto max_gamma = [](const surface::emitter_array& arr, double kp) {
        auto sp = collective::spectrum(arr, surface::optics_from_frac(1.0, kp));
        return sp.modes.front().gamma;
    };
    double g_free = max_gamma(surface::ring_in_free3d(8, 0.2), 0.0);
    double g_plane = max_gamma(surface::ring_on_plane(8, 0.2), 0.9);
    double ratio = g_plane / g_free;
    bool pass = g_free >= 2.0 && g_free <= 4.0 && std::fabs(ratio / 2.0 - 1.0) < ratio_pair_tol;
    return {pass, fmt("8-ring at spacing 0.2: free-space max gamma %.4f (want 2..4), "
                      "waveguide/free ratio %.4f (want 2 +- %.0f%%)",
                      g_free, ratio, ratio_pair_tol * 100)};
}

sweep::run_config ring_sweep_config(surface::kind geom, int n, double spacing, double kp,
                                    double radius, sweep::sweep_axis axis) {
    sweep::run_config cfg;
    cfg.geometry = geom;
    cfg.radius = radius;
    cfg.n = n;
    cfg.spacing = spacing;
    cfg.k_perp_frac = kp;
    cfg.axis = axis;
    return cfg;
}

outcome criterion_8() {
    auto cfg = ring_sweep_config(surface::kind::plane, 8, 0.6, 0.0, 0.0,
                                 {"k_perp_frac", 0.0, 0.95, 96, "linear"});
    auto res = sweep::run_sweep(cfg, 0);
    const auto& rows = res.blocks[0].rows;

    std::map<int, std::vector<double>> tracks;
    for (const auto& row : rows) {
        if (!row.ok) return {false, "sweep produced error rows"};
        for (const auto& m : row.modes) tracks[m.track_id].push_back(m.gamma);
    }
    int crossing_tracks = 0, crossings = 0;
    for (const auto& [id, gs] : tracks) {
        int c = 0;
        for (std::size_t i = 0; i + 1 < gs.size(); ++i)
            if ((gs[i] - 1.0) * (gs[i + 1] - 1.0) < 0.0) ++c;
        if (c > 0) ++crossing_tracks;
        crossings += c;
    }
    bool pass = crossing_tracks >= 1;
    return {pass, fmt("transverse-momentum sweep 0..0.95: %d tracks cross gamma = 1 "
                      "(%d crossings total, want >= 1)",
                      crossing_tracks, crossings)};
}

outcome criterion_9() {
    // shrinking-radius trend at fixed arc spacing
    auto cfg = ring_sweep_config(surface::kind::sphere, 8, 0.1, 0.9, 1.0,
                                 {"radius", 0.55, 10.0, 60, "log"});
    auto res = sweep::run_sweep(cfg, 0);
    const sweep::sweep_row* small_r = nullptr;
    const sweep::sweep_row* large_r = nullptr;
    for (const auto& row : res.blocks[0].rows) {
        if (!row.ok) continue;
        if (!small_r) small_r = &row;
        large_r = &row;
    }
    if (!small_r || small_r == large_r) return {false, "radius sweep left no usable rows"};
    auto minmax = [](const sweep::sweep_row& r) {
        double lo = 1e300, hi = -1e300;
        for (const auto& m : r.modes) {
            lo = std::min(lo, m.gamma);
            hi = std::max(hi, m.gamma);
        }
        return std::pair<double, double>{lo, hi};
    };
    auto [mn_s, mx_s] = minmax(*small_r);
    auto [mn_l, mx_l] = minmax(*large_r);
    bool trend = (mx_s < mx_l) && (mn_s > mn_l);

    // antipode behavior of the two sphere forms
    const double keff = std::sqrt(4.0 * pi * pi * 0.19 - 2.0);
    double o150 = std::abs(greens::green_sphere_open(150.0 * deg, 1.0, keff));
    double o155 = std::abs(greens::green_sphere_open(155.0 * deg, 1.0, keff));
    double o159 = std::abs(greens::green_sphere_open(159.0 * deg, 1.0, keff));
    double c150 = greens::green_sphere_closed(150.0 * deg, 1.0, keff);
    double c155 = greens::green_sphere_closed(155.0 * deg, 1.0, keff);
    double c159 = greens::green_sphere_closed(159.0 * deg, 1.0, keff);
    double closed_cap = 1.05 / (2.0 * pi);
    bool contrast = o150 < o155 && o155 < o159 && std::fabs(c150) < closed_cap &&
                    std::fabs(c155) < closed_cap && std::fabs(c159) < closed_cap;

    bool pass = trend && contrast;
    return {pass,
            fmt("radius %.3g->%.3g at spacing 0.1: max gamma %.3f vs %.3f (want smaller at "
                "small R), min gamma %.2e vs %.2e (want larger); antipode contrast %s "
                "(open |G| %.4f<%.4f<%.4f, closed bounded)",
                small_r->param, large_r->param, mx_s, mx_l, mn_s, mn_l,
                contrast ? "holds" : "FAILS", o150, o155, o159)};
}

outcome criterion_10() {
    auto cfg = ring_sweep_config(surface::kind::plane, 8, 0.6, 0.0, 0.0,
                                 {"k_perp_frac", 0.0, 0.9, 16, "linear"});
    auto r1 = sweep::run_sweep(cfg, 1);
    auto r2 = sweep::run_sweep(cfg, 1);
    auto r4 = sweep::run_sweep(cfg, 4);
    std::string c1 = sweep::to_csv(r1, cfg), c2 = sweep::to_csv(r2, cfg),
                c4 = sweep::to_csv(r4, cfg);
    std::string j1 = sweep::to_json(r1, cfg), j4 = sweep::to_json(r4, cfg);
    bool pass = c1 == c2 && c1 == c4 && j1 == j4;
    return {pass, fmt("repeat and 4-worker runs: CSV %s (%zu bytes), JSON %s",
                      (c1 == c2 && c1 == c4) ? "byte-identical" : "DIFFER", c1.size(),
                      j1 == j4 ? "byte-identical" : "DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
    using fn = outcome (*)();
    const fn criteria[] = {criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
                           criterion_6, criterion_7, criterion_8, criterion_9, criterion_10};

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i) {
        char* end = nullptr;
        long v = std::strtol(argv[i], &end, 10);
        if (end == argv[i] || *end != '\0' || v < 1 || v > 10) {
            std::fprintf(stderr, "usage: %s [criterion 1..10]...\n", argv[0]);
            return 2;
        }
        selected.push_back(static_cast<int>(v));
    }
    if (selected.empty())
        for (int c = 1; c <= 10; ++c) selected.push_back(c);

    int failures = 0;
    for (int c : selected) {
        outcome out;
        try {
            out = criteria[c - 1]();
        } catch (const std::exception& e) {
            out = {false, std::string("unexpected exception: ") + e.what()};
        }
        std::printf("%s criterion %d: %s\n", out.pass ? "PASS" : "FAIL", c,
                    out.detail.c_str());
        if (!out.pass) ++failures;
    }
    return failures;
}
