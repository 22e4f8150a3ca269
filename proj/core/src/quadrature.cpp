#include "xisys/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace xisys::quad {

namespace {

Rule compute_gauss_legendre(int n) {
    Rule r;
    r.nodes.resize(n);
    r.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.nodes[i] = -x;
        r.nodes[n - 1 - i] = x;
        r.weights[i] = w;
        r.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.nodes[n / 2] = 0.0;
    return r;
}

}  // namespace

const Rule& gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
    static std::mutex mutex;
    static std::map<int, Rule> cache;
    std::lock_guard lock(mutex);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
    return it->second;
}

Rule mapped(const Rule& ref, double lo, double hi) {
    Rule r;
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    r.nodes.reserve(ref.nodes.size());
    r.weights.reserve(ref.nodes.size());
    for (std::size_t i = 0; i < ref.nodes.size(); ++i) {
        r.nodes.push_back(mid + half * ref.nodes[i]);
        r.weights.push_back(half * ref.weights[i]);
    }
    return r;
}

Rule graded_left(double lo, double hi, int n, int power) {
    const Rule& ref = gauss_legendre(n);
    Rule r;
    r.nodes.reserve(n);
    r.weights.reserve(n);
    const double len = hi - lo;
    for (int i = 0; i < n; ++i) {
        const double s = 0.5 * (ref.nodes[i] + 1.0);
        const double sp1 = std::pow(s, power - 1);
        r.nodes.push_back(lo + len * sp1 * s);
        r.weights.push_back(0.5 * ref.weights[i] * len * power * sp1);
    }
    return r;
}

Rule singular_left(double sing, double lo, double hi, int n, int power) {
    const double gap = lo - sing;
    const double len = hi - lo;
    if (gap <= 0.0) return graded_left(lo, hi, n, power);
    if (gap >= len) return mapped(gauss_legendre(n), lo, hi);
    Rule r;
    const Rule& ref = gauss_legendre(n);
    double a = lo;
    while (a < hi) {
        const double b = std::min(hi, sing + 2.0 * (a - sing));
        const Rule piece = mapped(ref, a, b);
        r.nodes.insert(r.nodes.end(), piece.nodes.begin(), piece.nodes.end());
        r.weights.insert(r.weights.end(), piece.weights.begin(), piece.weights.end());
        a = b;
    }
    return r;
}

void legendre_orthonormal(double t, std::span<double> out) {
    const std::size_t m = out.size();
    if (m == 0) return;
    double p0 = 1.0, p1 = t;
    out[0] = std::sqrt(0.5);
    if (m > 1) out[1] = p1 * std::sqrt(1.5);
    for (std::size_t k = 2; k < m; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / double(k);
        p0 = p1;
        p1 = p2;
        out[k] = p2 * std::sqrt(k + 0.5);
    }
}

DyadicChebyshev::DyadicChebyshev(const std::function<double(double)>& f, int levels, int degree)
    : levels_(levels), degree_(degree), lower_(std::ldexp(1.0, -levels)) {
    const int n = degree + 1;
    coeffs_.assign(std::size_t(levels) * n, 0.0);
    std::vector<double> values(n);
    for (int k = 0; k < levels; ++k) {
        const double lo = std::ldexp(1.0, -k - 1);
        const double hi = std::ldexp(1.0, -k);
        for (int j = 0; j < n; ++j) {
            const double t = std::cos(std::numbers::pi * (j + 0.5) / n);
            values[j] = f(0.5 * (lo + hi) + 0.5 * (hi - lo) * t);
        }
        for (int i = 0; i < n; ++i) {
            double c = 0.0;
            for (int j = 0; j < n; ++j)
                c += values[j] * std::cos(std::numbers::pi * i * (j + 0.5) / n);
            coeffs_[std::size_t(k) * n + i] = (i == 0 ? 1.0 : 2.0) * c / n;
        }
    }
}

double DyadicChebyshev::operator()(double x) const {
    int e = 0;
    std::frexp(x, &e);  // x in [2^{e-1}, 2^e)
    int k = -e;         // panel [2^{-k-1}, 2^{-k}]
    if (x == 1.0) k = 0;
    if (k < 0 || k >= levels_) throw std::out_of_range("DyadicChebyshev: argument outside table");
    const double lo = std::ldexp(1.0, -k - 1);
    const double t = (x - lo) / lo * 2.0 - 1.0;  // panel width equals lo
    const double* c = coeffs_.data() + std::size_t(k) * (degree_ + 1);
    double b1 = 0.0, b2 = 0.0;
    for (int i = degree_; i >= 1; --i) {
        const double b0 = 2.0 * t * b1 - b2 + c[i];
        b2 = b1;
        b1 = b0;
    }
    return t * b1 - b2 + c[0];
}

}  // namespace xisys::quad
