#pragma once

#include <functional>
#include <span>
#include <vector>

namespace xisys::quad {

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// n-point Gauss-Legendre rule on [-1, 1]. Results are memoized per n.
const Rule& gauss_legendre(int n);

// Gauss-Legendre mapped to [lo, hi].
Rule mapped(const Rule& ref, double lo, double hi);

// Nodes clustered at lo: x = lo + (hi - lo) s^p with s Gauss-Legendre on [0, 1].
// Integrates (x - lo)^alpha * smooth accurately when p * (alpha + 1) is large.
Rule graded_left(double lo, double hi, int n, int power);

// Rule for int_lo^hi f where f ~ (x - sing)^alpha just right of sing <= lo. Graded when
// lo == sing, geometric panels toward sing when lo sits close to it, plain Gauss otherwise.
Rule singular_left(double sing, double lo, double hi, int n, int power);

// Orthonormal Legendre values sqrt((2k+1)/2) P_k(t), k < out.size(), on [-1, 1].
void legendre_orthonormal(double t, std::span<double> out);

// Piecewise Chebyshev interpolant on dyadic panels [2^{-k-1}, 2^{-k}], k < levels.
class DyadicChebyshev {
public:
    DyadicChebyshev() = default;
    DyadicChebyshev(const std::function<double(double)>& f, int levels, int degree);

    // Lowest point covered by the table.
    double lower() const { return lower_; }
    bool covers(double x) const { return x >= lower_ && x <= 1.0; }
    double operator()(double x) const;

private:
    int levels_ = 0;
    int degree_ = 0;
    double lower_ = 1.0;
    std::vector<double> coeffs_;  // levels x (degree + 1)
};

}  // namespace xisys::quad
