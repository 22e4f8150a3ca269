#include <doctest.h>

#include <cmath>
#include <vector>

#include "xisys/quadrature.hpp"

using namespace xisys;

namespace {
template <class F>
double apply(const quad::Rule& r, F f) {
    double s = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * f(r.nodes[i]);
    return s;
}
}  // namespace

TEST_CASE("Gauss-Legendre is exact for degree 2n-1") {
    for (int n : {1, 4, 11, 24}) {
        const auto r = quad::mapped(quad::gauss_legendre(n), 0.5, 2.0);
        const int d = 2 * n - 1;
        CHECK(apply(r, [&](double x) { return std::pow(x, d); }) ==
              doctest::Approx((std::pow(2.0, d + 1) - std::pow(0.5, d + 1)) / (d + 1)).epsilon(1e-13));
    }
}

TEST_CASE("graded and singular rules handle x^alpha") {
    const double alpha = -0.4;
    const double exact = 1.0 / (alpha + 1.0);
    CHECK(apply(quad::graded_left(0.0, 1.0, 20, 8), [&](double x) { return std::pow(x, alpha); }) ==
          doctest::Approx(exact).epsilon(1e-10));
    CHECK(apply(quad::singular_left(0.0, 0.0, 1.0, 20, 8),
                [&](double x) { return std::pow(x, alpha); }) == doctest::Approx(exact).epsilon(1e-10));
    // starts just right of the singular point
    const double lo = 1e-7;
    const double part = (1.0 - std::pow(lo, alpha + 1.0)) / (alpha + 1.0);
    CHECK(apply(quad::singular_left(0.0, lo, 1.0, 20, 8),
                [&](double x) { return std::pow(x, alpha); }) == doctest::Approx(part).epsilon(1e-10));
}

TEST_CASE("orthonormal Legendre values") {
    std::vector<double> v(4);
    quad::legendre_orthonormal(0.3, v);
    CHECK(v[0] == doctest::Approx(std::sqrt(0.5)));
    CHECK(v[1] == doctest::Approx(std::sqrt(1.5) * 0.3));
    CHECK(v[2] == doctest::Approx(std::sqrt(2.5) * 0.5 * (3 * 0.09 - 1)));
    CHECK(v[3] == doctest::Approx(std::sqrt(3.5) * 0.5 * (5 * 0.027 - 3 * 0.3)));
}

TEST_CASE("dyadic Chebyshev interpolant") {
    const quad::DyadicChebyshev f([](double x) { return std::log1p(x) * std::sqrt(x); }, 12, 16);
    CHECK(f.covers(0.001));
    for (double x : {0.001, 0.03, 0.4, 0.99})
        CHECK(f(x) == doctest::Approx(std::log1p(x) * std::sqrt(x)).epsilon(1e-12));
}
