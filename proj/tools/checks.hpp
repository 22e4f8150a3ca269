#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace xisys::checks {

struct CheckResult {
    std::string name;
    std::string anchor;   // stable identifier listed in the README check index
    std::vector<std::pair<std::string, double>> values;
    double tol = 0.0;
    bool pass = false;
    bool gate = true;     // false: recorded only, never fails a run
    std::string error;    // "<Kind>: message" when the check threw
    std::string note;
    double runtime = 0.0; // seconds
};

// Runs body, fills name/anchor/tol/runtime and converts exceptions into a failed entry.
CheckResult run_check(const std::string& name, const std::string& anchor, double tol,
                      const std::function<void(CheckResult&)>& body);

// Every anchor the suites can emit.
const std::vector<std::string>& known_anchors();

nlohmann::ordered_json to_json(const CheckResult& r, bool timings);

// Individual checks. The parameters mirror the quantities each law is stated for.

// specfun
CheckResult theta_unit_modulus(const std::vector<double>& omegas, int samples, double tol);
CheckResult theta_normalization(const std::vector<double>& omegas, double tol);
CheckResult theta_reflection(double omega, int samples, std::uint64_t seed, double tol);
CheckResult theta_inner(double omega, double tol);
CheckResult xi_symmetry(int samples, std::uint64_t seed, double tol);
CheckResult xi_two_path(int samples, std::uint64_t seed, double tol);
CheckResult ab_symmetry(double omega, std::uint64_t seed, double tol);

// kernel
CheckResult mellin_h(const std::vector<double>& omegas, double tol);
CheckResult mellin_h1(const std::vector<double>& omegas, double tol);
CheckResult h1_two_path(double omega, int samples, double tol);
CheckResult c_multiplicative(double omega, double tol);
CheckResult kernel_support(double omega, int samples, std::uint64_t seed);
CheckResult g_endpoint_rate(double omega);
CheckResult h1_trend(double omega);

// operator
CheckResult zero_operator(double omega);
CheckResult contraction(const std::vector<double>& omegas, const std::vector<double>& as);
CheckResult frobenius(double omega, const std::vector<double>& as, double tol);
CheckResult det_identity(double omega, const std::vector<double>& as, double tol);
CheckResult series_vs_matrix(double omega, double a, int order, double tol);
CheckResult refinement_gate(double omega, double a, double tol);
CheckResult solution_symmetry(double omega, double a, double tol);
CheckResult extension_support(double omega, double a);
CheckResult watson(double omega, double tol);

// canonical
CheckResult m_sources(double omega, double a_max, double step, double tol);
CheckResult ode_parity(double omega, double a_max, double tol);
CheckResult ode_realness(double omega, double a_max, double tol);
CheckResult two_path(double omega, const std::vector<double>& as, double tol);
CheckResult limit_law(double omega, double tol);
CheckResult schrodinger(double omega, double tol);
CheckResult zeros(double omega, double t_max);

}  // namespace xisys::checks
