#pragma once

#include <variant>

#include "sigmox/error_grid.hpp"
#include "sigmox/types.hpp"

namespace sigmox {

struct FitResult {
    std::variant<SigmoidCoeff, LogSigmoidCoeffs> coeffs;
    double objective_value;  // final sum of squared residuals over the grid
    int n_iterations;
    bool converged;
};

/// Refits the expected-sigmoid coefficient a > 0 against oracle data by
/// bracketed 1-D minimization of the unweighted squared error in the
/// expected-value domain. The returned objective is never worse than the
/// default calibrated value's on the same data.
FitResult fit_sigmoid_coeff(const ErrorGrid& oracle_data);

/// Refits the four expected-log-sigmoid coefficients by multi-start
/// Nelder-Mead (5 starts, the default calibrated values among them) on the
/// squared error in the log-sigmoid domain. Positivity of a, c, d is kept by
/// optimizing their logarithms. Convergence: simplex diameter < 1e-8 within
/// a budget of 2000 iterations per start.
FitResult fit_log_sigmoid_coeffs(const ErrorGrid& oracle_data);

namespace detail {

/// Derivative-free Nelder-Mead over n dimensions. Returns the best vertex.
struct SimplexResult {
    std::vector<double> x;
    double value;
    int n_iterations;
    bool converged;
};

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                          const std::vector<double>& start, double initial_step,
                          double diameter_tol, int max_iterations);

}  // namespace detail

}  // namespace sigmox
