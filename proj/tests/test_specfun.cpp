#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle_values.hpp"
#include "xisys/errors.hpp"
#include "xisys/specfun.hpp"

using namespace xisys;
using namespace xisys::specfun;

namespace {
double rel(Complex x, Complex ref) { return std::abs(x - ref) / std::abs(ref); }
}

TEST_CASE("log_gamma closed forms and oracle") {
    CHECK(std::abs(log_gamma(1.0)) < 1e-15);
    CHECK(std::abs(log_gamma(0.5) - std::log(std::sqrt(M_PI))) < 1e-14);
    CHECK(rel(log_gamma({3.0, 4.0}), oracle::kLogGamma3p4i) < 1e-13);
    CHECK(rel(std::exp(log_gamma(4.5)), std::tgamma(4.5)) < 1e-12);
    CHECK(rel(std::exp(log_gamma(-2.5)), std::tgamma(-2.5)) < 1e-12);
}

TEST_CASE("log_gamma poles") {
    CHECK_THROWS_AS(log_gamma(0.0), PoleError);
    CHECK_THROWS_AS(log_gamma(-3.0), PoleError);
    CHECK_NOTHROW(log_gamma({-3.0, 1e-3}));
}

TEST_CASE("zeta values") {
    CHECK(rel(zeta(2.0), M_PI * M_PI / 6.0) < 1e-13);
    CHECK(std::abs(zeta(0.0) + 0.5) < 1e-13);
    CHECK(rel(zeta({0.5, 10.0}), oracle::kZetaHalfPlus10i) < 1e-10);
    CHECK(rel(zeta({-3.0, 2.0}), oracle::kZetaMinus3p2i) < 1e-10);
    CHECK(std::abs(zeta({0.5, oracle::kFirstZetaZero})) < 1e-9);
    CHECK(std::abs(zeta({0.5, 14.134725})) < 1e-6);
    CHECK_THROWS_AS(zeta(1.0), PoleError);
}

TEST_CASE("xi values and symmetries") {
    CHECK(std::abs(xi(0.5) - oracle::kXiHalf) < 1e-13);
    CHECK(std::abs(xi(2.0) - oracle::kXi2) < 1e-13);
    CHECK(std::abs(xi(0.0) - 0.5) < 1e-14);
    CHECK(std::abs(xi(1.0) - 0.5) < 1e-14);
    CHECK(rel(xi({0.7, 20.0}), oracle::kXi07p20i) < 1e-10);
    CHECK(rel(xi({0.5, 9.0}), xi({0.5, -9.0})) < 1e-12);

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> re(-5.0, 6.0), im(-30.0, 30.0);
    for (int k = 0; k < 200; ++k) {
        const Complex s(re(rng), im(rng));
        const Complex v = xi(s);
        CHECK(rel(xi(1.0 - s), v) < 1e-10);
        CHECK(rel(xi(std::conj(s)), std::conj(v)) < 1e-10);
    }
}

TEST_CASE("theta-series xi agrees with the zeta path") {
    CHECK(std::abs(xi_theta_series(0.5) - oracle::kXiHalf) < 1e-12);
    CHECK(std::abs(xi_theta_series(2.0) - oracle::kXi2) < 1e-12);
    CHECK(rel(xi_theta_series({0.7, 20.0}), oracle::kXi07p20i) < 1e-9);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> re(-5.0, 6.0), im(-30.0, 30.0);
    for (int k = 0; k < 60; ++k) {
        const Complex s(re(rng), im(rng));
        CHECK(rel(xi_theta_series(s), xi(s)) < 1e-9);
    }
}

TEST_CASE("theta_omega") {
    CHECK(rel(theta_omega({2.0, 1.0}, 1.5), oracle::kTheta15At2p1i) < 1e-11);
    for (double w : {0.75, 1.25, 1.5, 2.5}) {
        CHECK(std::abs(theta_omega(0.0, w) - 1.0) < 1e-10);
        for (double u = -40.0; u <= 40.0; u += 0.4)
            CHECK(std::abs(std::abs(theta_omega(u, w)) - 1.0) < 1e-9);
    }
    for (double y : {0.1, 1.0, 5.0})
        for (double x = -20.0; x <= 20.0; x += 2.5)
            CHECK(std::abs(theta_omega({x, y}, 1.5)) < 1.0);
    for (double x : {0.3, 4.0, -11.0}) {
        const Complex z(x, 0.4);
        CHECK(std::abs(theta_omega(z, 1.5) * theta_omega(-z, 1.5) - 1.0) < 1e-8);
    }
}

TEST_CASE("theta_omega denominator zero is a pole") {
    // xi(1/2 + w - iz) vanishes at z = -gamma_1 - i w.
    const double w = 0.75;
    const Complex z(-oracle::kFirstZetaZero, -w);
    CHECK_THROWS_AS(theta_omega(z, w), PoleError);
}

TEST_CASE("A and B") {
    const auto p = ab_omega({3.0, 0.5}, 1.5);
    CHECK(rel(p.a, oracle::kA15At3p05i) < 1e-11);
    CHECK(rel(p.b, oracle::kB15At3p05i) < 1e-11);
    CHECK(std::abs(b_omega(0.0, 1.5)) < 1e-15);
    for (double x : {0.7, 5.0, 17.3}) {
        const auto u = ab_omega(x, 1.5);
        CHECK(std::abs(u.a.imag()) < 1e-10 * std::abs(u.a));
        CHECK(std::abs(u.b.imag()) < 1e-10 * std::abs(u.b));
        const Complex z(x, -1.3);
        CHECK(rel(a_omega(-z, 1.5), a_omega(z, 1.5)) < 1e-12);
        CHECK(rel(b_omega(-z, 1.5), -b_omega(z, 1.5)) < 1e-12);
    }
    // A - iB = xi(s + w)
    const Complex z(2.0, 0.3);
    const auto q = ab_omega(z, 1.5);
    CHECK(rel(q.a - Complex(0, 1) * q.b, xi(s_of_z(z) + 1.5)) < 1e-13);
}
