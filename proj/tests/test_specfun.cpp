#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "clat/errors.hpp"
#include "clat/oracle.hpp"
#include "clat/specfun.hpp"

using namespace clat;
using namespace clat::specfun;

namespace ref {
constexpr double j0_1 = 0.7651976865579665514497175;
constexpr double y0_1 = 0.08825696421567695798292677;
constexpr double j0_12 = 0.04768931079683353662381169;
constexpr double y0_12 = -0.2252373126343614336876851;
constexpr double j0_zero1 = 2.404825557695772768621632;
constexpr double hyp = -0.1970850907408277244673355;  // 2F1(-2.5, 3.5; 1; 0.2)
constexpr double p_26_04 = -0.4415134771357440631642672;
constexpr double p_52_m08 = 0.2616444522613679451416153;
constexpr double q_15_03 = -0.882726090491828041739734;
constexpr double q_03_08 = 0.6209474556956138716081439;
constexpr double q_52_m03 = 0.2509546914449080990794045;
constexpr double q_15_0999 = 2.513230831568907072112;
constexpr double dp_26_04 = 0.4501972357443806408507;
constexpr double dq_15_03 = -0.4434045061456727039755;
constexpr double q_17_m04 = 0.3838927298499563011122;
constexpr double dq_17_m04 = -2.014892149203075940621;
constexpr double p_17_m04 = -0.4976408748919053806143;
constexpr double dp_17_m04 = -0.4891561728906275820694;
constexpr double digamma_03 = -3.502524222200132988964;
constexpr double digamma_114 = 2.389112974944005385894;
}  // namespace ref

TEST_CASE("bessel values against the extended-precision oracle") {
    CHECK(bessel_j0(1.0) == doctest::Approx(ref::j0_1).epsilon(1e-12));
    CHECK(bessel_y0(1.0) == doctest::Approx(ref::y0_1).epsilon(1e-12));
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::fabs(bessel_j0(ref::j0_zero1)) < 1e-9);

    // both sides of the crossover against frozen oracle values
    CHECK(bessel_j0(12.0) == doctest::Approx(ref::j0_12).epsilon(1e-9));
    CHECK(bessel_y0(12.0) == doctest::Approx(ref::y0_12).epsilon(1e-9));

    // live cross-check on a grid spanning both branches
    for (double x : {0.3, 1.7, 4.0, 7.5, 11.0, 13.5}) {
        oracle::certified j = oracle::hp_bessel_j0(x);
        CHECK(std::fabs(bessel_j0(x) - j.value) < 1e-9);
        oracle::certified y = oracle::hp_bessel_y0(x);
        CHECK(std::fabs(bessel_y0(x) - y.value) < 1e-9);
    }

    CHECK_THROWS_AS(bessel_j0(-0.1), domain_error);
    CHECK_THROWS_AS(bessel_y0(0.0), domain_error);
    CHECK_THROWS_AS(hankel1_0(0.0), domain_error);
}

TEST_CASE("bessel branches agree at the crossover") {
    // each branch is certified to 1e-9 at the boundary, so their gap can be
    // at most the sum of the two budgets (measured: a few 1e-10)
    double below = bessel_j0(bessel_crossover - 1e-9);
    double above = bessel_j0(bessel_crossover + 1e-9);
    CHECK(std::fabs(below - above) < 2e-9);

    below = bessel_y0(bessel_crossover - 1e-9);
    above = bessel_y0(bessel_crossover + 1e-9);
    CHECK(std::fabs(below - above) < 2e-9);
}

TEST_CASE("hankel composition and asymptotic modulus") {
    std::complex<double> h = hankel1_0(1.0);
    CHECK(h.real() == doctest::Approx(ref::j0_1).epsilon(1e-12));
    CHECK(h.imag() == doctest::Approx(ref::y0_1).epsilon(1e-12));

    for (double x : {21.0, 25.0, 40.0}) {
        double mod = std::abs(hankel1_0(x));
        double leading = std::sqrt(2.0 / (3.14159265358979323846 * x));
        CHECK(std::fabs(mod - leading) / leading < 0.01);
    }
}

TEST_CASE("squared bessel modulus decreases") {
    double prev = 1e300;
    for (double x = 1.0; x < 30.0; x += 0.7) {
        double m = bessel_j0(x) * bessel_j0(x) + bessel_y0(x) * bessel_y0(x);
        CHECK(m < prev);
        prev = m;
    }
}

TEST_CASE("y0 log singularity structure near zero") {
    // Y0 - (2/pi) ln(x/2) J0 tends to (2/pi) gamma, so it stays bounded
    for (double x : {1e-3, 1e-5}) {
        double rest = bessel_y0(x) -
                      (2.0 / 3.14159265358979323846) * std::log(0.5 * x) * bessel_j0(x);
        CHECK(std::fabs(rest) < 1.0);
    }
}

TEST_CASE("hypergeometric series") {
    CHECK(hyp2f1_unit_c(0.0, 1.0, 0.3) == 1.0);
    CHECK(std::fabs(hyp2f1_unit_c(-1.0, 2.0, 0.5)) < 1e-15);
    CHECK(hyp2f1_unit_c(-2.5, 3.5, 0.2) == doctest::Approx(ref::hyp).epsilon(1e-12));

    CHECK_THROWS_AS(hyp2f1_unit_c(0.3, 0.7, -0.1), domain_error);
    CHECK_THROWS_AS(hyp2f1_unit_c(0.3, 0.7, 1.0), domain_error);
    try {
        hyp2f1_unit_c(0.3, 0.7, 0.999);
        FAIL("expected a convergence error");
    } catch (const convergence_error& e) {
        CHECK(e.terms_used == 10000);
    }

    series_control bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(hyp2f1_unit_c(0.3, 0.7, 0.2, bad), domain_error);
    bad = {};
    bad.max_terms = 10;
    CHECK_THROWS_AS(hyp2f1_unit_c(0.3, 0.7, 0.2, bad), domain_error);
}

TEST_CASE("legendre p values") {
    CHECK(legendre_p(2.6, 1.0) == 1.0);
    CHECK(legendre_p(1.0, 0.7) == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(legendre_p(2.6, 0.4) == doctest::Approx(ref::p_26_04).epsilon(1e-12));
    CHECK(legendre_p(5.2, -0.8) == doctest::Approx(ref::p_52_m08).epsilon(1e-11));

    // live oracle cross
    for (double nu : {0.3, 1.7, 5.2}) {
        for (double x : {-0.6, 0.1, 0.8}) {
            CHECK(std::fabs(legendre_p(nu, x) - oracle::hp_legendre_p(nu, x).value) < 1e-9);
        }
    }

    CHECK_THROWS_AS(legendre_p(-0.5, 0.3), domain_error);
    CHECK_THROWS_AS(legendre_p(0.3, 1.2), domain_error);
    CHECK_THROWS_AS(legendre_p(0.3, -0.95), convergence_error);
}

TEST_CASE("legendre q values") {
    CHECK(legendre_q(0.0, 0.5) == doctest::Approx(std::atanh(0.5)).epsilon(1e-15));
    CHECK(legendre_q(1.0, 0.5) ==
          doctest::Approx(0.5 * std::atanh(0.5) - 1.0).epsilon(1e-15));
    CHECK(legendre_q(1.5, 0.3) == doctest::Approx(ref::q_15_03).epsilon(1e-11));
    CHECK(legendre_q(0.3, 0.8) == doctest::Approx(ref::q_03_08).epsilon(1e-11));
    CHECK(legendre_q(5.2, -0.3) == doctest::Approx(ref::q_52_m03).epsilon(1e-11));
    CHECK(legendre_q(1.7, -0.4) == doctest::Approx(ref::q_17_m04).epsilon(1e-11));
    // the log form deep in its own territory, x near 1
    CHECK(legendre_q(1.5, 0.999) == doctest::Approx(ref::q_15_0999).epsilon(1e-12));

    // integer degrees against the independent recurrence oracle
    for (int n : {2, 3, 7}) {
        for (double x : {-0.5, 0.2, 0.8}) {
            CHECK(std::fabs(legendre_q(n, x) - oracle::hp_legendre_q(n, x).value) < 1e-9);
        }
    }

    CHECK_THROWS_AS(legendre_q(0.3, 1.0), domain_error);
    CHECK_THROWS_AS(legendre_q(0.3, -1.0), domain_error);
    CHECK_THROWS_AS(legendre_q(0.3, -0.95), convergence_error);
}

TEST_CASE("near-integer degree snapping") {
    // inside the snap window the integer path is used verbatim
    CHECK(legendre_q(2.0 + 5e-7, 0.4) == legendre_q(2.0, 0.4));
    // just outside, the non-integer series must land close to the integer value
    CHECK(std::fabs(legendre_q(2.0 + 2e-6, 0.4) - legendre_q(2.0, 0.4)) < 1e-4);
}

TEST_CASE("integer-degree consistency of p") {
    auto p2 = [](double x) { return 0.5 * (3.0 * x * x - 1.0); };
    for (double x : {-0.6, 0.1, 0.7}) {
        CHECK(std::fabs(legendre_p(2.0 + 1e-7, x) - p2(x)) < 1e-5);
        CHECK(std::fabs(legendre_p(2.0 - 1e-7, x) - p2(x)) < 1e-5);
        CHECK(legendre_p(2.0, x) == doctest::Approx(p2(x)).epsilon(1e-13));
    }
}

TEST_CASE("legendre derivatives") {
    CHECK(legendre_p_prime(1.0, 0.37) == 1.0);
    CHECK(legendre_p_prime(2.6, 0.4) == doctest::Approx(ref::dp_26_04).epsilon(1e-11));
    CHECK(legendre_p_prime(1.7, -0.4) == doctest::Approx(ref::dp_17_m04).epsilon(1e-11));
    CHECK(legendre_q_prime(1.5, 0.3) == doctest::Approx(ref::dq_15_03).epsilon(1e-11));
    CHECK(legendre_q_prime(1.7, -0.4) == doctest::Approx(ref::dq_17_m04).epsilon(1e-11));

    // closed forms at integer degree
    for (double x : {-0.5, 0.3}) {
        CHECK(legendre_q_prime(0.0, x) ==
              doctest::Approx(1.0 / (1.0 - x * x)).epsilon(1e-14));
    }

    // central-difference agreement, the derivative's defining property
    const double h = 1e-6;
    auto fd = [h](auto f, double x) { return (f(x + h) - f(x - h)) / (2.0 * h); };
    CHECK(std::fabs(legendre_p_prime(2.6, 0.4) -
                    fd([](double x) { return legendre_p(2.6, x); }, 0.4)) < 1e-6);
    CHECK(std::fabs(legendre_q_prime(1.5, 0.3) -
                    fd([](double x) { return legendre_q(1.5, x); }, 0.3)) < 1e-6);
    CHECK(std::fabs(legendre_q_prime(2.0, 0.5) -
                    fd([](double x) { return legendre_q(2.0, x); }, 0.5)) < 1e-6);
    CHECK(std::fabs(legendre_q_prime(1.7, -0.4) -
                    fd([](double x) { return legendre_q(1.7, x); }, -0.4)) < 1e-5);
}

TEST_CASE("wronskian identity on the verification grid") {
    for (double nu : {0.0, 0.3, 1.0, 1.7, 5.2}) {
        for (double x : {-0.8, -0.3, 0.0, 0.3, 0.8}) {
            double want = 1.0 / (1.0 - x * x);
            double got = legendre_p(nu, x) * legendre_q_prime(nu, x) -
                         legendre_p_prime(nu, x) * legendre_q(nu, x);
            CHECK(std::fabs(got - want) < 1e-8 * std::fabs(want));
        }
    }
}

TEST_CASE("legendre ode residual") {
    // the eps/h^2 rounding floor of the second difference grows like nu^4
    // through the fourth derivative, so the high degree needs a wider step
    // (truncation at h = 1e-4 is still far below the bound)
    for (double nu : {0.3, 1.7, 5.2}) {
        const double h = nu > 3.0 ? 1e-4 : 1e-5;
        for (double x : {-0.5, 0.2, 0.6}) {
            auto resid = [&](auto f) {
                double fm = f(x - h), f0 = f(x), fp = f(x + h);
                double d2 = (fm - 2.0 * f0 + fp) / (h * h);
                double d1 = (fp - fm) / (2.0 * h);
                double r = (1.0 - x * x) * d2 - 2.0 * x * d1 + nu * (nu + 1.0) * f0;
                return std::fabs(r) / (std::fabs(f0) + 1e-30);
            };
            CHECK(resid([&](double t) { return legendre_p(nu, t); }) < 1e-4);
            CHECK(resid([&](double t) { return legendre_q(nu, t); }) < 1e-4);
        }
    }
}

TEST_CASE("large-degree bessel limit") {
    const double nu = 500.0;
    const double s = 1.0;
    const double theta = s / (nu + 0.5);
    double x = std::cos(theta);
    CHECK(std::fabs(legendre_p(nu, x) - bessel_j0(s)) < 1e-2);
    CHECK(std::fabs(legendre_q(nu, x) +
                    0.5 * 3.14159265358979323846 * bessel_y0(s)) < 1e-2);
}

TEST_CASE("digamma") {
    CHECK(digamma(0.3) == doctest::Approx(ref::digamma_03).epsilon(1e-13));
    CHECK(digamma(11.4) == doctest::Approx(ref::digamma_114).epsilon(1e-13));
    // psi(1) = -gamma, psi(2) = 1 - gamma
    CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-13));
    CHECK(digamma(2.0) - digamma(1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(digamma(0.0), domain_error);
}
