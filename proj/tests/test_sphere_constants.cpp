#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "vexlab/sphere_constants.hpp"

using namespace vexlab;

namespace {
constexpr double kPi = 3.14159265358979323846264338327950288;
}

TEST_CASE("n=1 sphere is the two-point set") {
    CHECK(gamma(1, 3.7) == 2.0);
    CHECK(gamma(1, 1.0) == 2.0);
    CHECK(gamma(1, 0.0) == 2.0);
}

TEST_CASE("closed-form values against known integrals") {
    CHECK(gamma(2, 2.0) == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(gamma(3, 1.0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK(gamma(2, 0.0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));  // total measure of S^1
    CHECK(gamma(3, 0.0) == doctest::Approx(4.0 * kPi).epsilon(1e-12));  // total measure of S^2
}

TEST_CASE("closed form agrees with the latitude quadrature oracle") {
    for (int n : {2, 3}) {
        for (double p : {1.0, 1.5, 2.0, 3.0, 4.0}) {
            const double closed = gamma(n, p);
            const double quad = gamma_latitude_quadrature(n, p);
            CHECK(std::abs(closed - quad) < 1e-8 * std::max(1.0, std::abs(closed)));
        }
    }
}

TEST_CASE("rotation invariance: the defining integral is independent of e") {
    // direct angular quadrature of int_0^{2pi} |cos(t - t0)|^p dt for a tilted axis
    for (double p : {1.0, 2.0, 3.5}) {
        const double t0 = 0.7123;
        const int m = 200000;
        double acc = 0.0;
        for (int k = 0; k < m; ++k) {
            const double t = 2.0 * kPi * (k + 0.5) / m;
            acc += std::pow(std::abs(std::cos(t - t0)), p);
        }
        acc *= 2.0 * kPi / m;
        CHECK(acc == doctest::Approx(gamma(2, p)).epsilon(1e-10));
    }
}

TEST_CASE("gamma is non-increasing in p") {
    for (int n : {1, 2, 3}) {
        double prev = gamma(n, 0.0);
        for (double p = 0.25; p <= 6.0; p += 0.25) {
            const double cur = gamma(n, p);
            CHECK(cur <= prev + 1e-14);
            prev = cur;
        }
    }
}

TEST_CASE("k_const is gamma over p, exactly") {
    CHECK(k_const(1, 1.0) == 2.0);
    CHECK(k_const(2, 2.0) == doctest::Approx(kPi / 2.0).epsilon(1e-12));
    CHECK(k_const(3, 1.0) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    for (int n : {1, 2, 3})
        for (double p : {1.0, 1.7, 3.2}) CHECK(k_const(n, p) * p == gamma(n, p));
}

TEST_CASE("monte carlo oracle") {
    SUBCASE("degenerate n=1") {
        const McEstimate mc = gamma_mc(1, 2.0, 5000, 99);
        CHECK(mc.estimate == 2.0);
        CHECK(mc.std_error == 0.0);
    }
    SUBCASE("agreement within 4 standard errors") {
        for (int n : {2, 3}) {
            for (double p : {1.0, 2.0, 3.0}) {
                const McEstimate mc = gamma_mc(n, p, 200000, 42 + n);
                CHECK(std::abs(mc.estimate - gamma(n, p)) < 4.0 * mc.std_error);
            }
        }
    }
    SUBCASE("deterministic for a fixed seed") {
        const McEstimate a = gamma_mc(2, 2.5, 50000, 7);
        const McEstimate b = gamma_mc(2, 2.5, 50000, 7);
        CHECK(a.estimate == b.estimate);
        CHECK(a.std_error == b.std_error);
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS((void)gamma(0, 2.0), std::domain_error);
    CHECK_THROWS_AS((void)gamma(2, -0.5), std::domain_error);
    CHECK_THROWS_AS((void)k_const(2, 0.5), std::domain_error);
    CHECK_THROWS_AS((void)gamma_mc(2, 2.0, 10, 1), std::invalid_argument);
}
