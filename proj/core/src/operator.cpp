#include "xisys/operator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "xisys/errors.hpp"

namespace xisys::op {

namespace {

constexpr double kConditionLimit = 1e12;

int grading_power(double omega) { return std::clamp(int(std::ceil(10.0 / omega)), 2, 30); }

bool near_integer(double u) {
    return std::abs(u - std::round(u)) <= 1e-12 * std::max(1.0, std::abs(u));
}

void require_operator_regime(const kernel::KernelContext& ctx) {
    if (!(ctx.omega() > 1.0))
        throw RegimeError("operator pipeline requires omega > 1 (continuous kernel)");
}

// Orthonormal Legendre basis on [lo, hi].
void basis_values(double x, double lo, double hi, std::span<double> out) {
    const double t = 2.0 * (x - lo) / (hi - lo) - 1.0;
    quad::legendre_orthonormal(t, out);
    const double scale = std::sqrt(2.0 / (hi - lo));
    for (double& v : out) v *= scale;
}

// v_k = int_{panel} h(s y) e_k(y) dy
void panel_moments(const kernel::KernelContext& ctx, double s, double lo, double hi,
                   std::span<double> out, int nodes) {
    std::fill(out.begin(), out.end(), 0.0);
    const double u_lo = std::max(1.0, s * lo);
    const double u_hi = s * hi;
    if (u_hi <= u_lo) return;
    std::vector<double> e(out.size());
    const int power = grading_power(ctx.omega());
    double a = u_lo;
    while (a < u_hi) {
        const double n = near_integer(a) ? std::round(a) : std::floor(a);
        const double b = std::min(u_hi, n + 1.0);
        const quad::Rule r = quad::singular_left(std::min(n, a), a, b, nodes, power);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            const double u = r.nodes[i];
            const double y = u / s;
            basis_values(y, lo, hi, e);
            const double w = r.weights[i] * ctx.h(u) / s;
            for (std::size_t k = 0; k < out.size(); ++k) out[k] += w * e[k];
        }
        a = b;
    }
}

Eigen::VectorXd all_moments(const kernel::KernelContext& ctx, double s,
                            const std::vector<double>& breaks, int degree, int nodes) {
    const int panels = int(breaks.size()) - 1;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(Eigen::Index(panels) * degree);
    for (int p = 0; p < panels; ++p)
        panel_moments(ctx, s, breaks[p], breaks[p + 1],
                      std::span<double>(v.data() + std::size_t(p) * degree, std::size_t(degree)),
                      nodes);
    return v;
}

void fill_spectrum(DiscreteOperator& op) {
    if (op.matrix.rows() == 0) {
        op.eigenvalues.resize(0);
        op.eigenvectors.resize(0, 0);
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(op.matrix);
    op.eigenvalues = es.eigenvalues();
    op.eigenvectors = es.eigenvectors();
}

std::vector<double> gap_points(double s0, double s1, int levels, double ratio, int uniform) {
    std::vector<double> pts;
    const double half = 0.5 * (s1 - s0);
    for (int j = levels; j >= 1; --j) pts.push_back(s0 + half * std::pow(ratio, j));
    const double c0 = levels > 0 ? s0 + half * ratio : s0;
    const double c1 = levels > 0 ? s1 - half * ratio : s1;
    for (int u = 1; u < uniform; ++u) pts.push_back(c0 + (c1 - c0) * u / uniform);
    if (levels > 0) pts.push_back(c1);
    for (int j = 2; j <= levels; ++j) pts.push_back(s1 - half * std::pow(ratio, j));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

}  // namespace

QuadratureGrid build_grid(double a, int n_per_panel, int refinement) {
    if (!(a > 0.0)) throw DomainError("build_grid: a must be positive");
    if (n_per_panel < 4) throw DomainError("build_grid: need at least 4 nodes per panel");
    if (refinement < 0) throw DomainError("build_grid: refinement must be nonnegative");
    const int panels = std::max(8, int(std::ceil(8.0 * a))) << refinement;

    std::vector<double> anchors{0.0};
    if (a > 1.0) {
        anchors.push_back(1.0 / a);
        for (int n = 2; double(n) / a < a; ++n) anchors.push_back(double(n) / a);
    }
    anchors.push_back(a);

    // Largest-remainder split of panels over anchor gaps, at least one each.
    const std::size_t gaps = anchors.size() - 1;
    std::vector<int> count(gaps, 1);
    int left = panels - int(gaps);
    std::vector<double> share(gaps);
    for (std::size_t g = 0; g < gaps; ++g)
        share[g] = std::max(0, left) * (anchors[g + 1] - anchors[g]) / a;
    for (std::size_t g = 0; g < gaps; ++g) {
        const int whole = int(std::floor(share[g]));
        count[g] += whole;
        share[g] -= whole;
        left -= whole;
    }
    std::vector<std::size_t> order(gaps);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return share[i] > share[j]; });
    for (std::size_t i = 0; left > 0 && i < gaps; ++i, --left) count[order[i]] += 1;

    QuadratureGrid grid;
    grid.a = a;
    grid.panel_breaks.push_back(0.0);
    for (std::size_t g = 0; g < gaps; ++g)
        for (int k = 1; k <= count[g]; ++k)
            grid.panel_breaks.push_back(anchors[g] + (anchors[g + 1] - anchors[g]) * k / count[g]);
    grid.panel_breaks.back() = a;

    const quad::Rule& ref = quad::gauss_legendre(n_per_panel);
    for (std::size_t p = 0; p + 1 < grid.panel_breaks.size(); ++p) {
        const quad::Rule r = quad::mapped(ref, grid.panel_breaks[p], grid.panel_breaks[p + 1]);
        grid.nodes.insert(grid.nodes.end(), r.nodes.begin(), r.nodes.end());
        grid.weights.insert(grid.weights.end(), r.weights.begin(), r.weights.end());
    }
    return grid;
}

namespace {

constexpr double kAnchorMerge = 1e-6;

std::vector<double> layout_anchors(const GalerkinLayout& layout, double a) {
    std::vector<double> anchors;
    for (int n = 1; n <= layout.anchor_count; ++n) anchors.push_back(double(n) / a);
    for (int n : layout.roots) anchors.push_back(std::sqrt(double(n)));
    anchors.push_back(a);
    std::sort(anchors.begin(), anchors.end());
    return anchors;
}

// sqrt(n) inside (1/a, a), skipping those that sit on an n/a anchor.
std::vector<int> root_anchors(double a, int anchor_count) {
    std::vector<int> roots;
    for (int n = 1; std::sqrt(double(n)) < a * (1.0 - kAnchorMerge); ++n) {
        const double r = std::sqrt(double(n));
        if (r <= (1.0 + kAnchorMerge) / a) continue;
        bool clash = false;
        for (int m = 1; m <= anchor_count; ++m)
            clash = clash || std::abs(r - double(m) / a) < kAnchorMerge * r;
        if (!clash) roots.push_back(n);
    }
    return roots;
}

}  // namespace

std::vector<double> GalerkinLayout::breaks(double a) const {
    const std::vector<double> anchors = layout_anchors(*this, a);
    if (anchors.size() != uniform_panels.size() + 1)
        throw DomainError("GalerkinLayout: anchor count does not match the layout");
    std::vector<double> out{anchors.front()};
    for (std::size_t g = 0; g + 1 < anchors.size(); ++g) {
        const double s0 = anchors[g];
        const double s1 = anchors[g + 1];
        if (!(s1 > s0)) throw DomainError("GalerkinLayout: anchors collide at this a");
        for (double p : gap_points(s0, s1, grading_levels, grading_ratio, uniform_panels[g]))
            if (p > s0 && p < s1) out.push_back(p);
        out.push_back(s1);
    }
    return out;
}

GalerkinLayout make_layout(double a, const GalerkinOptions& opts) {
    if (!(a > 1.0)) throw DomainError("make_layout: a must exceed 1");
    if (opts.degree < 1) throw DomainError("make_layout: degree must be positive");
    GalerkinLayout layout;
    layout.degree = opts.degree;
    layout.grading_levels = opts.grading_levels;
    layout.grading_ratio = opts.grading_ratio;
    layout.anchor_count = std::max(1, int(std::ceil(a * a * (1.0 - 1e-9))) - 1);
    layout.roots = root_anchors(a, layout.anchor_count);
    layout.outer_nodes = std::max(20, 3 * opts.degree + 4);
    layout.inner_nodes = std::max(20, 3 * opts.degree + 4);
    const std::vector<double> anchors = layout_anchors(layout, a);
    for (std::size_t g = 0; g + 1 < anchors.size(); ++g) {
        const double len = anchors[g + 1] - anchors[g];
        const double core = len * (layout.grading_levels > 0 ? 1.0 - opts.grading_ratio : 1.0);
        layout.uniform_panels.push_back(std::max(1, int(std::ceil(core / opts.max_panel))));
    }
    return layout;
}

double DiscreteOperator::spectral_radius() const {
    if (eigenvalues.size() == 0) return 0.0;
    return std::max(std::abs(eigenvalues(0)), std::abs(eigenvalues(eigenvalues.size() - 1)));
}

DiscreteOperator discretize(const kernel::KernelContext& ctx, const QuadratureGrid& grid) {
    require_operator_regime(ctx);
    DiscreteOperator op;
    op.scheme = Scheme::nystrom;
    op.omega = ctx.omega();
    op.a = grid.a;
    op.grid = grid;
    op.panel_breaks = grid.panel_breaks;
    const Eigen::Index n = Eigen::Index(grid.nodes.size());
    op.matrix = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> sw(grid.weights.size());
    for (std::size_t i = 0; i < sw.size(); ++i) sw[i] = std::sqrt(grid.weights[i]);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double v = sw[i] * ctx.h(grid.nodes[i] * grid.nodes[j]) * sw[j];
            op.matrix(i, j) = v;
            op.matrix(j, i) = v;
        }
    }
    fill_spectrum(op);
    return op;
}

DiscreteOperator discretize_galerkin(const kernel::KernelContext& ctx, double a,
                                     const GalerkinOptions& opts) {
    require_operator_regime(ctx);
    if (a <= 1.0) {
        DiscreteOperator op;
        op.scheme = Scheme::galerkin;
        op.omega = ctx.omega();
        op.a = a;
        op.degree = opts.degree;
        op.grid.a = a;
        return op;
    }
    return discretize_galerkin(ctx, a, make_layout(a, opts));
}

DiscreteOperator discretize_galerkin(const kernel::KernelContext& ctx, double a,
                                     const GalerkinLayout& layout) {
    require_operator_regime(ctx);
    DiscreteOperator op;
    op.scheme = Scheme::galerkin;
    op.omega = ctx.omega();
    op.a = a;
    op.degree = layout.degree;
    op.grid.a = a;
    if (a <= 1.0) return op;

    const std::vector<double> br = layout.breaks(a);
    op.panel_breaks = br;
    const int m = layout.degree;
    const int panels = int(br.size()) - 1;
    const Eigen::Index n = Eigen::Index(panels) * m;
    op.matrix = Eigen::MatrixXd::Zero(n, n);

    const quad::Rule& inner_ref = quad::gauss_legendre(layout.inner_nodes);
    const int power = grading_power(ctx.omega());
    std::vector<double> ex(m), ey(m);
    Eigen::MatrixXd left, right;

    for (int p = 0; p < panels; ++p) {
        const double x0 = br[p], x1 = br[p + 1];
        for (int q = p; q < panels; ++q) {
            const double y0 = br[q], y1 = br[q + 1];
            const double lo = std::max(1.0, x0 * y0);
            const double hi = x1 * y1;
            if (hi <= lo) continue;

            std::vector<double> cuts{lo, hi};
            for (double c : {x0 * y1, x1 * y0})
                if (c > lo && c < hi) cuts.push_back(c);
            for (double k = std::floor(lo) + 1.0; k < hi; k += 1.0)
                if (k > lo) cuts.push_back(k);
            std::sort(cuts.begin(), cuts.end());
            cuts.erase(std::unique(cuts.begin(), cuts.end(),
                                   [&](double u, double v) { return v - u <= 1e-14 * hi; }),
                       cuts.end());

            std::vector<std::pair<double, double>> xs;  // (X, weight * h(X))
            for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
                const double u0 = cuts[c], u1 = cuts[c + 1];
                const double n = near_integer(u0) ? u0 : std::floor(u0);
                const quad::Rule r = quad::singular_left(n, u0, u1, layout.outer_nodes, power);
                for (std::size_t i = 0; i < r.nodes.size(); ++i) {
                    const double hx = ctx.h(r.nodes[i]);
                    if (hx != 0.0) xs.emplace_back(r.nodes[i], r.weights[i] * hx);
                }
            }
            const Eigen::Index cols = Eigen::Index(xs.size()) * layout.inner_nodes;
            left.setZero(m, cols);
            right.setZero(m, cols);
            Eigen::Index col = 0;
            for (const auto& [X, wx] : xs) {
                const double xl = std::max(x0, X / y1);
                const double xr = std::min(x1, X / y0);
                if (!(xr > xl)) {
                    col += layout.inner_nodes;
                    continue;
                }
                const double half = 0.5 * (xr - xl), mid = 0.5 * (xr + xl);
                for (int i = 0; i < layout.inner_nodes; ++i, ++col) {
                    const double x = mid + half * inner_ref.nodes[i];
                    const double y = X / x;
                    basis_values(x, x0, x1, ex);
                    basis_values(y, y0, y1, ey);
                    const double w = wx * half * inner_ref.weights[i] / x;
                    for (int k = 0; k < m; ++k) {
                        left(k, col) = w * ex[k];
                        right(k, col) = ey[k];
                    }
                }
            }
            const Eigen::MatrixXd block = left * right.transpose();
            if (p == q) {
                op.matrix.block(Eigen::Index(p) * m, Eigen::Index(p) * m, m, m) =
                    0.5 * (block + block.transpose());
            } else {
                op.matrix.block(Eigen::Index(p) * m, Eigen::Index(q) * m, m, m) = block;
                op.matrix.block(Eigen::Index(q) * m, Eigen::Index(p) * m, m, m) = block.transpose();
            }
        }
    }

    // Gauss points per panel, for reporting grid values.
    const quad::Rule& ref = quad::gauss_legendre(m);
    for (int p = 0; p < panels; ++p) {
        const quad::Rule r = quad::mapped(ref, br[p], br[p + 1]);
        op.grid.nodes.insert(op.grid.nodes.end(), r.nodes.begin(), r.nodes.end());
        op.grid.weights.insert(op.grid.weights.end(), r.weights.begin(), r.weights.end());
    }
    op.grid.panel_breaks = br;
    fill_spectrum(op);
    return op;
}

LogDetPair log_det_pair(const DiscreteOperator& op) {
    LogDetPair out;
    for (Eigen::Index i = 0; i < op.eigenvalues.size(); ++i) {
        const double lp = 1.0 + op.eigenvalues(i);
        const double lm = 1.0 - op.eigenvalues(i);
        if (!(lp > 0.0) || !(lm > 0.0))
            throw SingularError("det_pair: spectral radius >= 1 in the discretized operator");
        out.plus += std::log(lp);
        out.minus += std::log(lm);
    }
    return out;
}

DetPair det_pair(const DiscreteOperator& op) {
    const LogDetPair l = log_det_pair(op);
    return {std::exp(l.plus), std::exp(l.minus)};
}

double frobenius_bound(const kernel::KernelContext& ctx, double a) {
    if (a <= 1.0) return 0.0;
    const double integral = kernel::integrate_unit_cells(
        1.0, a * a, [&](double x) { const double v = ctx.h(x); return v * v; }, 24,
        grading_power(ctx.omega()));
    return 2.0 * std::log(a) * integral;
}

SeriesResult fredholm_series(const kernel::KernelContext& ctx, double a, double lambda, int order,
                             double tail_tolerance, int n_per_panel, int refinement) {
    if (order < 0 || order > 6) throw DomainError("fredholm_series: order must lie in [0, 6]");
    SeriesResult res;
    res.coefficients.assign(std::size_t(order) + 1, 0.0);
    res.coefficients[0] = 1.0;
    if (a <= 1.0) {
        res.value = 1.0;
        return res;
    }
    const DiscreteOperator op = discretize(ctx, build_grid(a, n_per_panel, refinement));

    // traces of iterated kernels: tr(M^k) = sum w.. K(x1,x2) K(x2,x3) ... K(xk,x1)
    std::vector<double> traces(std::size_t(order) + 1, 0.0);
    Eigen::MatrixXd power = op.matrix;
    for (int k = 1; k <= order; ++k) {
        if (k > 1) power = power * op.matrix;
        traces[k] = power.trace();
    }
    // Newton identities: e_n = (1/n) sum_{k=1}^n (-1)^{k-1} e_{n-k} p_k; d_n = (-1)^n e_n
    std::vector<double> e(std::size_t(order) + 1, 0.0);
    e[0] = 1.0;
    for (int nn = 1; nn <= order; ++nn) {
        double acc = 0.0;
        for (int k = 1; k <= nn; ++k) acc += ((k % 2) ? 1.0 : -1.0) * e[nn - k] * traces[k];
        e[nn] = acc / nn;
        res.coefficients[nn] = ((nn % 2) ? -1.0 : 1.0) * e[nn];
    }
    double value = 0.0, lp = 1.0;
    for (int nn = 0; nn <= order; ++nn, lp *= lambda) value += res.coefficients[nn] * lp;
    res.value = value;

    res.hadamard_m1 = a * ctx.sampled_sup_h(1.0, a * a, 2000);
    const double base = std::abs(lambda) * res.hadamard_m1;
    double tail = 0.0;
    if (base > 0.0) {
        for (int nn = order + 1; nn < 2000; ++nn) {
            const double lt = 0.5 * nn * std::log(double(nn)) + nn * std::log(base) - std::lgamma(nn + 1.0);
            const double term = std::exp(lt);
            tail += term;
            if (nn > 4 * (order + 1) && term < 1e-18 * tail) break;
        }
    }
    res.tail_bound = tail;
    if (tail > tail_tolerance)
        throw TruncationError("fredholm_series: Hadamard tail bound exceeds tolerance");
    return res;
}

double PhiSolution::integrate(const std::function<double(double)>& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < quad_nodes_.size(); ++i)
        acc += quad_weights_[i] * quad_values_[i] * f(quad_nodes_[i]);
    return acc;
}

double PhiSolution::l1_norm() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < quad_nodes_.size(); ++i)
        acc += quad_weights_[i] * std::abs(quad_values_[i]);
    return acc;
}

PhiSolution trivial_phi(const kernel::KernelContext& ctx, double a, int eps) {
    if (a > 1.0) throw DomainError("trivial_phi: only valid for a <= 1");
    PhiSolution s;
    s.eps = eps;
    s.a = a;
    auto shared = std::make_shared<const kernel::KernelContext>(ctx);
    s.extension_ = [shared, a](double x) { return shared->h(a * x); };
    // h(a y) vanishes on (0, a) when a <= 1, so the quadrature stays empty.
    s.at_a_ = ctx.h(a * a);
    return s;
}

PhiSolution solve_phi(const kernel::KernelContext& ctx, const DiscreteOperator& op, int eps) {
    require_operator_regime(ctx);
    if (eps != 1 && eps != -1) throw DomainError("solve_phi: eps must be +1 or -1");
    const double a = op.a;
    if (a <= 1.0) return trivial_phi(ctx, a, eps);

    const Eigen::VectorXd shifted = Eigen::VectorXd::Ones(op.eigenvalues.size()) + eps * op.eigenvalues;
    const double smax = shifted.cwiseAbs().maxCoeff();
    const double smin = shifted.cwiseAbs().minCoeff();
    PhiSolution s;
    s.eps = eps;
    s.a = a;
    s.scheme = op.scheme;
    s.condition = smax / smin;
    if (!(s.condition <= kConditionLimit))
        throw SolveError("solve_phi: condition number of I + eps H exceeds 1e12");

    auto shared = std::make_shared<const kernel::KernelContext>(ctx);

    Eigen::VectorXd rhs;
    if (op.scheme == Scheme::nystrom) {
        const auto& g = op.grid;
        rhs.resize(Eigen::Index(g.nodes.size()));
        for (std::size_t i = 0; i < g.nodes.size(); ++i)
            rhs(Eigen::Index(i)) = std::sqrt(g.weights[i]) * ctx.h(a * g.nodes[i]);
    } else {
        rhs = all_moments(ctx, a, op.panel_breaks, op.degree, std::max(20, op.degree + 8));
    }
    const Eigen::VectorXd coef =
        op.eigenvectors * (op.eigenvectors.transpose() * rhs).cwiseQuotient(shifted);
    const Eigen::VectorXd resid = coef + eps * (op.matrix * coef) - rhs;
    s.residual = rhs.norm() > 0.0 ? resid.norm() / rhs.norm() : resid.norm();

    if (op.scheme == Scheme::nystrom) {
        const auto grid = std::make_shared<const QuadratureGrid>(op.grid);
        auto values = std::make_shared<std::vector<double>>(grid->nodes.size());
        for (std::size_t i = 0; i < grid->nodes.size(); ++i)
            (*values)[i] = coef(Eigen::Index(i)) / std::sqrt(grid->weights[i]);
        s.nodes = grid->nodes;
        s.grid_values = *values;
        s.quad_nodes_ = grid->nodes;
        s.quad_weights_ = grid->weights;
        s.quad_values_ = *values;
        s.extension_ = [shared, grid, values, a, eps](double x) {
            double acc = 0.0;
            for (std::size_t j = 0; j < grid->nodes.size(); ++j)
                acc += grid->weights[j] * shared->h(x * grid->nodes[j]) * (*values)[j];
            return shared->h(a * x) - eps * acc;
        };
        double acc = 0.0;
        for (std::size_t j = 0; j < grid->nodes.size(); ++j)
            acc += grid->weights[j] * ctx.h(a * grid->nodes[j]) * (*values)[j];
        s.at_a_ = ctx.h(a * a) - eps * acc;
    } else {
        const int m = op.degree;
        const auto breaks = std::make_shared<const std::vector<double>>(op.panel_breaks);
        const auto c = std::make_shared<const Eigen::VectorXd>(coef);
        const int moment_nodes = std::max(20, m + 8);
        std::vector<double> e(std::size_t(m), 0.0);
        auto evaluate = [&](std::size_t p, double x) {
            basis_values(x, (*breaks)[p], (*breaks)[p + 1], e);
            double acc = 0.0;
            for (int k = 0; k < m; ++k) acc += coef(Eigen::Index(p) * m + k) * e[std::size_t(k)];
            return acc;
        };
        const quad::Rule& ref = quad::gauss_legendre(m);
        const quad::Rule& fine = quad::gauss_legendre(2 * m + 4);
        for (std::size_t p = 0; p + 1 < breaks->size(); ++p) {
            const quad::Rule r = quad::mapped(ref, (*breaks)[p], (*breaks)[p + 1]);
            for (double x : r.nodes) {
                s.nodes.push_back(x);
                s.grid_values.push_back(evaluate(p, x));
            }
            const quad::Rule q = quad::mapped(fine, (*breaks)[p], (*breaks)[p + 1]);
            for (std::size_t i = 0; i < q.nodes.size(); ++i) {
                s.quad_nodes_.push_back(q.nodes[i]);
                s.quad_weights_.push_back(q.weights[i]);
                s.quad_values_.push_back(evaluate(p, q.nodes[i]));
            }
        }
        s.extension_ = [shared, breaks, c, m, a, eps, moment_nodes](double x) {
            if (!(x > 0.0)) throw DomainError("phi extension: x must be positive");
            const Eigen::VectorXd mom = all_moments(*shared, x, *breaks, m, moment_nodes);
            return shared->h(a * x) - eps * c->dot(mom);
        };
        s.at_a_ = ctx.h(a * a) - eps * coef.dot(rhs);
    }
    return s;
}

double mu_of_a(const kernel::KernelContext& ctx, double a, const GalerkinOptions& opts) {
    if (!(a > 0.0)) throw DomainError("mu_of_a: a must be positive");
    if (a <= 1.0) return 0.0;
    const DiscreteOperator op = discretize_galerkin(ctx, a, opts);
    const PhiSolution plus = solve_phi(ctx, op, 1);
    const PhiSolution minus = solve_phi(ctx, op, -1);
    return a * (plus.at_a() + minus.at_a());
}

LogDetPair log_det_derivative(const kernel::KernelContext& ctx, double a, double step,
                              const GalerkinOptions& opts) {
    if (!(a - step > 1.0)) throw DomainError("log_det_derivative: need a - step > 1");
    const GalerkinLayout layout = make_layout(a, opts);
    const LogDetPair up = log_det_pair(discretize_galerkin(ctx, a + step, layout));
    const LogDetPair down = log_det_pair(discretize_galerkin(ctx, a - step, layout));
    return {(up.plus - down.plus) / (2.0 * step), (up.minus - down.minus) / (2.0 * step)};
}

namespace {

template <class K>
double apply_kernel(const kernel::KernelContext& ctx, const TestFunction& f, double x, K&& k) {
    if (!(x > 0.0)) throw DomainError("kernel application: x must be positive");
    const double lo = std::max(1.0, x * f.lo);
    const double hi = x * f.hi;
    if (hi <= lo) return 0.0;
    // Test functions are bumps whose integrals cancel heavily against the sign changes
    // of h, so each unit cell is further cut into pieces of width <= kApplyPiece.
    constexpr double kApplyPiece = 1.0 / 32.0;
    const int power = grading_power(ctx.omega());
    double acc = 0.0;
    for (double c0 = lo; c0 < hi;) {
        const double c1 = std::min(hi, std::floor(c0) + 1.0);
        const int pieces = std::max(1, int(std::ceil((c1 - c0) / kApplyPiece)));
        for (int p = 0; p < pieces; ++p) {
            const double s0 = c0 + (c1 - c0) * p / pieces;
            const double s1 = p + 1 == pieces ? c1 : c0 + (c1 - c0) * (p + 1) / pieces;
            const quad::Rule r = quad::singular_left(std::floor(c0), s0, s1, 24, power);
            for (std::size_t i = 0; i < r.nodes.size(); ++i)
                acc += r.weights[i] * k(r.nodes[i]) * f.f(r.nodes[i] / x);
        }
        c0 = c1;
    }
    return acc / x;
}

}  // namespace

double apply_direct(const kernel::KernelContext& ctx, const TestFunction& f, double x) {
    return apply_kernel(ctx, f, x, [&](double u) { return ctx.h(u); });
}

double apply_integrated(const kernel::KernelContext& ctx, const TestFunction& f, double x) {
    return apply_kernel(ctx, f, x, [&](double u) { return ctx.h1(u); });
}

WatsonResult watson_apply(const kernel::KernelContext& ctx, const TestFunction& f, double x,
                          double rel_step) {
    require_operator_regime(ctx);
    WatsonResult r;
    r.direct = apply_direct(ctx, f, x);
    const double d = rel_step * x;
    const double up = std::sqrt(x + d) * apply_integrated(ctx, f, x + d);
    const double down = std::sqrt(x - d) * apply_integrated(ctx, f, x - d);
    r.watson = std::sqrt(x) * (up - down) / (2.0 * d);
    return r;
}

}  // namespace xisys::op
