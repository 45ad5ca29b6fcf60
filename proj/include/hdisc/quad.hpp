#pragma once

// Adaptive panel quadrature based on the 15-point Gauss-Kronrod rule,
// plus composite helpers for oscillatory integrands with known panel layouts.

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hdisc {

struct QuadResult {
    double value = 0.0;
    double error_bound = 0.0;  // achieved absolute error estimate
    bool converged = true;
    int evaluations = 0;
};

// thrown when an integral cannot meet its requested tolerance; carries the
// achieved bound so callers can decide whether to proceed anyway
struct QuadratureError : std::runtime_error {
    double achieved;
    QuadratureError(const std::string& what, double achieved_)
        : std::runtime_error(what), achieved(achieved_) {}
};

// single GK15 panel: returns (kronrod value, |kronrod - gauss| error estimate)
void gk15_panel(const std::function<double(double)>& f, double a, double b,
                double& value, double& err);

// append the 15 Kronrod abscissae and weights for [a,b] to nodes/weights
void gk15_nodes(double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

// globally adaptive bisection until the summed error estimate <= abs_tol
// (or <= rel_tol * |value|); panels beyond max_panels -> non-converged result
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double abs_tol, double rel_tol = 0.0, int max_panels = 4000);

// adaptive integration started from a user panel layout (breakpoints ascending)
QuadResult integrate_adaptive_panels(const std::function<double(double)>& f,
                                     const std::vector<double>& breakpoints, double abs_tol,
                                     double rel_tol = 0.0, int max_panels = 8000);

// pairwise (tree) summation for reproducible reductions
double pairwise_sum(const std::vector<double>& v);

}  // namespace hdisc
