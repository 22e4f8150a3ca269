#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracle_values.hpp"
#include "xisys/errors.hpp"
#include "xisys/kernel.hpp"

using namespace xisys;
using kernel::KernelContext;

TEST_CASE("beta tail against closed forms") {
    // p = 1, q = 2: int_z^1 (1 - t) dt = (1 - z)^2 / 2
    CHECK(kernel::beta_tail({0.3, 1.0, 2.0, 1}) == doctest::Approx(0.245).epsilon(1e-12));
    // p = 2, q = 1: (1 - z^2) / 2
    CHECK(kernel::beta_tail({0.6, 2.0, 1.0, 1}) == doctest::Approx(0.32).epsilon(1e-12));
    // p = -0.5, q = 1: int_z^1 t^{-3/2} dt = 2 (z^{-1/2} - 1)
    CHECK(kernel::beta_tail({0.25, -0.5, 1.0, 1}) == doctest::Approx(2.0).epsilon(1e-11));
    // q = 1/2 endpoint singularity: int_0.5^1 (1-t)^{-1/2} dt = 2 sqrt(0.5)
    CHECK(kernel::beta_tail({0.5, 1.0, 0.5, 1}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-11));
}

TEST_CASE("c(n)") {
    const KernelContext half(0.5);
    CHECK(half.jordan_c(1) == 1.0);
    CHECK(half.jordan_c(4) == doctest::Approx(1.0).epsilon(1e-14));  // phi(4) / sqrt(4)
    const KernelContext one(1.0);
    CHECK(one.jordan_c(6) == doctest::Approx(4.0).epsilon(1e-14));
    const KernelContext ctx(1.5);
    for (long p : {2L, 3L, 5L, 7L, 97L})
        CHECK(ctx.jordan_c(p) == doctest::Approx(std::pow(p, 1.5) - std::pow(p, -1.5)).epsilon(1e-14));
    for (long m = 1; m <= 50; ++m)
        for (long n = 1; n <= 50; ++n)
            if (std::gcd(m, n) == 1)
                CHECK(ctx.jordan_c(m * n) ==
                      doctest::Approx(ctx.jordan_c(m) * ctx.jordan_c(n)).epsilon(1e-12));
    CHECK_THROWS_AS(ctx.jordan_c(ctx.n_max() + 1), RangeError);
    CHECK(ctx.c_table()[1] == 1.0);
}

TEST_CASE("g") {
    const KernelContext two(2.0);
    CHECK(two.g(2.0) == 0.0);
    CHECK(two.g(0.4) == doctest::Approx(oracle::kG2At04).epsilon(1e-11));
    CHECK(two.g(0.8) == doctest::Approx(oracle::kG2At08).epsilon(1e-11));
    CHECK(two.g(1.0) == 0.0);
    const KernelContext ctx(1.5);
    CHECK(ctx.g(0.5) == doctest::Approx(oracle::kG15At05).epsilon(1e-11));
    CHECK(ctx.g_reference(0.5) == doctest::Approx(oracle::kG15At05).epsilon(1e-11));
    // omega = 2 near 0: g(x) / x^{2-omega} -> -6 pi^2
    CHECK(two.g(1e-8) == doctest::Approx(-6.0 * M_PI * M_PI).epsilon(1e-7));
    // omega = 2 has the polynomial closed form 2 pi^2 (-3 + 8x - 5x^2)
    for (double x : {0.01, 0.2, 0.55, 0.97})
        CHECK(two.g(x) == doctest::Approx(2.0 * M_PI * M_PI * (-3.0 + 8.0 * x - 5.0 * x * x)).epsilon(1e-12));
    // omega = 2 near 1: g ~ (2 pi)^2 (1 - x)
    const double d = 1e-5;
    CHECK(two.g(1.0 - d) / d == doctest::Approx(4.0 * M_PI * M_PI).epsilon(1e-4));
    const KernelContext low(0.8);
    CHECK_THROWS_AS(low.g(1.0), DomainError);
}

TEST_CASE("g endpoint rate for omega > 1") {
    const KernelContext ctx(1.5);
    const double scale = std::tgamma(1.5) / std::pow(2.0 * M_PI, 1.5);
    double prev = 1e300;
    for (int k = 2; k <= 5; ++k) {
        const double d = std::pow(10.0, -k);
        const double dev = std::abs(ctx.g(1.0 - d) * scale - std::pow(d, 0.5));
        CHECK(dev < prev);
        prev = dev;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("g1") {
    const KernelContext half(0.5);
    const double x = 0.5, r = std::sqrt(1.0 - x * x);
    const double closed = 2.0 / std::sqrt(x) * (2.0 * r + std::log(x) - std::log(1.0 + r));
    CHECK(half.g1(x) == doctest::Approx(closed).epsilon(1e-10));
    CHECK(half.g1(1.5) == 0.0);
    const KernelContext two(2.0);
    CHECK(two.g1(0.3) == doctest::Approx(oracle::kG1_2At03).epsilon(1e-10));
    CHECK(std::abs(two.g1_reference(0.3) - two.g1_quadrature(0.3)) < 1e-8);
    const KernelContext ctx(1.5);
    CHECK(ctx.g1(0.6) == doctest::Approx(oracle::kG1_15At06).epsilon(1e-10));
}

TEST_CASE("h and h1") {
    const KernelContext two(2.0);
    CHECK(two.h(0.7) == 0.0);
    CHECK(std::abs(two.h(1.0)) < 1e-14);
    CHECK(two.h(2.5) == doctest::Approx(oracle::kH2At25).epsilon(1e-11));
    CHECK(two.h(2.5) == doctest::Approx((two.g(0.4) + two.jordan_c(2) * two.g(0.8)) / 2.5).epsilon(1e-14));
    CHECK(two.h1(0.9) == 0.0);
    CHECK(two.h1(3.0) == doctest::Approx(oracle::kH1_2At3).epsilon(1e-9));
    CHECK(std::abs(two.h1(3.0) - two.h1_integral(3.0)) < 1e-7);

    const KernelContext ctx(1.5);
    CHECK(ctx.h(3.7) == doctest::Approx(oracle::kH15At37).epsilon(1e-11));
    for (int i = 0; i < 100; ++i) {
        const double x = 1.1 + (20.0 - 1.1) * i / 99.0;
        CHECK(std::abs(ctx.h1(x) - ctx.h1_integral(x)) < 1e-7);
    }

    const KernelContext small(1.5, 64);
    CHECK_THROWS_AS(small.h(65.5), RangeError);
    const KernelContext low(0.8);
    CHECK_THROWS_AS(low.h(3.0), DomainError);
    CHECK_NOTHROW(low.h(3.5));
}

TEST_CASE("kernel support") {
    const KernelContext ctx(1.5);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> below(1e-3, 1.0), above(1.0, 60.0);
    for (int k = 0; k < 1000; ++k) {
        const double lo = below(rng), hi = above(rng);
        if (lo < 1.0) {
            REQUIRE(ctx.h(lo) == 0.0);
            REQUIRE(ctx.h1(lo) == 0.0);
        }
        if (hi > 1.0) {
            REQUIRE(ctx.g(hi) == 0.0);
            REQUIRE(ctx.g1(hi) == 0.0);
        }
    }
}

TEST_CASE("Mellin transforms") {
    const KernelContext ctx(1.5);
    const Complex z(0.0, 3.5);
    const auto m = kernel::mellin_check_h(z, 200.0, ctx, kernel::MellinKernel::h, 1e-3);
    const Complex theta = specfun::theta_omega(z, 1.5);
    CHECK(std::abs(m.value - theta) / std::abs(theta) < 1e-5);
    CHECK(m.tail_bound > 0.0);

    const KernelContext two(2.0);
    const Complex z2(0.0, 4.0);
    const auto m1 = kernel::mellin_transform(z2, two, kernel::MellinKernel::h1, 1e-8);
    const Complex target = Complex(0, 1) / z2 * specfun::theta_omega(z2, 2.0);
    CHECK(std::abs(m1.value - target) / std::abs(target) < 1e-5);

    CHECK_THROWS_AS(kernel::mellin_check_h({0.0, 1.9}, 200.0, ctx), ConvergenceError);
    CHECK_THROWS_AS(kernel::mellin_check_h({0.0, 3.5}, 40.0, ctx, kernel::MellinKernel::h, 1e-12),
                    ConvergenceError);
}
