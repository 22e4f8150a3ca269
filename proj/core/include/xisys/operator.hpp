#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "xisys/kernel.hpp"

namespace xisys::op {

// Composite Gauss-Legendre rule on (0, a).
struct QuadratureGrid {
    double a = 0.0;
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> panel_breaks;
};

// Panels = max(8, ceil(8a)) * 2^refinement, breaks at 1/a and n/a.
QuadratureGrid build_grid(double a, int n_per_panel = 24, int refinement = 0);

enum class Scheme { nystrom, galerkin };

// Piecewise-Legendre Galerkin layout on [1/a, a]. Anchors are the points n/a
// (n = 1..anchor_count), sqrt(n) for n in roots, and a. Each gap between anchors is graded geometrically
// toward both ends and split uniformly in the middle. The structure (counts) is
// fixed, so breaks move smoothly with a.
struct GalerkinLayout {
    int degree = 12;              // basis functions per panel
    int anchor_count = 1;         // number of n/a anchors inside (0, a)
    std::vector<int> roots;       // n with sqrt(n) inside (1/a, a) and off the n/a anchors
    int grading_levels = 3;
    double grading_ratio = 0.2;
    std::vector<int> uniform_panels;  // per gap between sorted anchors
    int outer_nodes = 20;         // Gauss points per X segment
    int inner_nodes = 20;         // Gauss points per inner x integral

    std::vector<double> breaks(double a) const;
};

struct GalerkinOptions {
    int degree = 10;
    double max_panel = 0.125;
    int grading_levels = 3;
    double grading_ratio = 0.2;
};

GalerkinLayout make_layout(double a, const GalerkinOptions& opts = {});

// Matrix representation of the operator f -> int_0^a h(xy) f(y) dy restricted to (0, a).
// Nystrom: entries sqrt(w_i) h(x_i x_j) sqrt(w_j).
// Galerkin: entries <e_k, H e_l> in an orthonormal piecewise-Legendre basis.
struct DiscreteOperator {
    Scheme scheme = Scheme::nystrom;
    double omega = 0.0;
    double a = 0.0;
    QuadratureGrid grid;              // Nystrom nodes, or Gauss points per Galerkin panel
    std::vector<double> panel_breaks; // Galerkin panels
    int degree = 0;
    Eigen::MatrixXd matrix;
    Eigen::VectorXd eigenvalues;      // ascending
    Eigen::MatrixXd eigenvectors;

    Eigen::Index size() const { return matrix.rows(); }
    double spectral_radius() const;
    double frobenius_norm() const { return matrix.norm(); }
};

// Nystrom discretization. Throws RegimeError for omega <= 1.
DiscreteOperator discretize(const kernel::KernelContext& ctx, const QuadratureGrid& grid);

// Galerkin discretization with exact hyperbola-aware integration.
DiscreteOperator discretize_galerkin(const kernel::KernelContext& ctx, double a,
                                     const GalerkinLayout& layout);
DiscreteOperator discretize_galerkin(const kernel::KernelContext& ctx, double a,
                                     const GalerkinOptions& opts = {});

struct DetPair {
    double plus = 1.0;   // det(I + M)
    double minus = 1.0;  // det(I - M)
};

struct LogDetPair {
    double plus = 0.0;
    double minus = 0.0;
};

// Throws SingularError if either determinant is <= 0.
DetPair det_pair(const DiscreteOperator& op);
LogDetPair log_det_pair(const DiscreteOperator& op);

// Hilbert-Schmidt bound 2 log a int_1^{a^2} h(x)^2 dx.
double frobenius_bound(const kernel::KernelContext& ctx, double a);

struct SeriesResult {
    double value = 1.0;                 // truncated sum_n d_n lambda^n
    std::vector<double> coefficients;   // d_0 .. d_order
    double hadamard_m1 = 0.0;           // a sup |K|
    double tail_bound = 0.0;            // sum_{n > order} n^{n/2} (|lambda| M1)^n / n!
};

// Truncated Fredholm series d(lambda; a) = det(I - lambda H) through tensor quadrature on
// build_grid(a). Coefficients come from traces of iterated kernels. Order <= 6.
// Throws TruncationError if tail_bound > tail_tolerance.
SeriesResult fredholm_series(const kernel::KernelContext& ctx, double a, double lambda, int order,
                             double tail_tolerance = std::numeric_limits<double>::infinity(),
                             int n_per_panel = 24, int refinement = 0);

// Solution of phi + eps int_0^a h(xy) phi(y) dy = h(a x) on (0, a), with the extension
// phi(x) = h(a x) - eps int_0^a h(xy) phi(y) dy to x > 0.
class PhiSolution {
public:
    int eps = 1;
    double a = 0.0;
    Scheme scheme = Scheme::nystrom;
    std::vector<double> nodes;
    std::vector<double> grid_values;
    double residual = 0.0;
    double condition = 1.0;

    double operator()(double x) const { return extension_(x); }
    double at_a() const { return at_a_; }

    // int_0^a phi(y) f(y) dy by the solution's own quadrature; f smooth on each panel.
    double integrate(const std::function<double(double)>& f) const;
    double l1_norm() const;

    // Quadrature used by integrate(): nodes, weights and phi at the nodes.
    const std::vector<double>& quadrature_nodes() const { return quad_nodes_; }
    const std::vector<double>& quadrature_weights() const { return quad_weights_; }
    const std::vector<double>& quadrature_values() const { return quad_values_; }

private:
    friend PhiSolution solve_phi(const kernel::KernelContext&, const DiscreteOperator&, int);
    friend PhiSolution trivial_phi(const kernel::KernelContext&, double, int);
    std::function<double(double)> extension_;
    std::vector<double> quad_nodes_, quad_weights_, quad_values_;
    double at_a_ = 0.0;
};

// Throws RegimeError for omega <= 1 and SolveError when cond(I + eps M) > 1e12.
PhiSolution solve_phi(const kernel::KernelContext& ctx, const DiscreteOperator& op, int eps);

// For a <= 1 both solutions equal h(a x).
PhiSolution trivial_phi(const kernel::KernelContext& ctx, double a, int eps);

// mu(a) = a phi_+(a) + a phi_-(a); zero for a <= 1.
double mu_of_a(const kernel::KernelContext& ctx, double a, const GalerkinOptions& opts = {});

// Centered differences of log det(I +- H) with the layout frozen at a.
LogDetPair log_det_derivative(const kernel::KernelContext& ctx, double a, double step,
                              const GalerkinOptions& opts = {});

struct TestFunction {
    std::function<double(double)> f;
    double lo = 0.0;
    double hi = 0.0;
};

struct WatsonResult {
    double direct = 0.0;  // int h(xy) f(y) dy
    double watson = 0.0;  // sqrt(x) d/dx sqrt(x) int h1(xy) f(y) dy
};

double apply_direct(const kernel::KernelContext& ctx, const TestFunction& f, double x);
double apply_integrated(const kernel::KernelContext& ctx, const TestFunction& f, double x);
WatsonResult watson_apply(const kernel::KernelContext& ctx, const TestFunction& f, double x,
                          double rel_step = 1e-5);

}  // namespace xisys::op
