#pragma once

#include "sigmox/types.hpp"

namespace sigmox {

/// Logistic function 1/(1 + exp(-x)), overflow-free for any finite x.
double sigmoid(double x) noexcept;

/// First or second derivative of the logistic function.
/// Only orders 1 and 2 are supported; other orders throw std::invalid_argument.
double sigmoid_deriv(double x, int order);

/// log(sigmoid(x)) = -log1p(exp(-x)), stable for large |x|.
double log_sigmoid(double x) noexcept;

/// Taylor approximation of E[s(x)] around the mean, order 1 or 2.
/// The order-2 value can leave (0,1) for large variance.
double taylor_expected_sigmoid(const Gaussian1D& g, int order);

/// Closed-form approximation E[s(x)] ~ s(mean / sqrt(1 + a*variance)).
/// Always in (0,1), sigmoidal in the mean, exact in the variance -> 0 limit.
double fixed_form_expected_sigmoid(const Gaussian1D& g,
                                   SigmoidCoeff coeff = SigmoidCoeff::fitted());

/// Second-order Taylor approximation of E[log s(x)]:
/// log s(mean) - 0.5 * s(mean)(1 - s(mean)) * variance.
double taylor_expected_log_sigmoid(const Gaussian1D& g);

/// Closed-form approximation
/// E[log s(x)] ~ log s((mean + b*variance^c) / sqrt(1 + a*variance^d)).
/// Always negative; variance^c and variance^d are taken as 0 at variance = 0.
double fixed_form_expected_log_sigmoid(const Gaussian1D& g,
                                       const LogSigmoidCoeffs& coeffs = LogSigmoidCoeffs::fitted());

/// Expected parametric sigmoid E[s((x - t)/rho)] via the affine change of
/// variables: s((mean - t) / sqrt(rho^2 + (3/pi^2) * variance)).
double parametric_expected_sigmoid(const Gaussian1D& g, const SigmoidShape& shape);

/// E[1/(shift + exp(-x))] through the identity
/// 1/(shift + exp(-x)) = s(x + log shift)/shift. Requires shift > 0.
double expected_reciprocal_shifted(const Gaussian1D& g, double shift);

/// Approximation of E[s'(x)] as a rescaled logistic density:
/// s'(mean/q)/q with q = sqrt(1 + (3/pi^2) * variance).
///
/// This reading keeps the exact variance -> 0 limit s'(mean) and stays
/// consistent with sigmoid_variance below. The alternative Gaussian-density
/// reading is exposed separately; see expected_sigmoid_derivative_normal_form.
double expected_sigmoid_derivative(const Gaussian1D& g);

/// Alternative to expected_sigmoid_derivative: the Gaussian density
/// N(0; mean, variance + pi^2/3). Better in deep tails but biased by -12%
/// at variance = 0. Kept for comparison tests.
double expected_sigmoid_derivative_normal_form(const Gaussian1D& g);

/// Closed-form approximation of Var[s(x)]:
/// st(1-st)(1 - 1/q), st = s(mean/q), q = sqrt(1 + (3/pi^2) * variance).
/// Bounded in [0, 1/4), monotone increasing in the variance.
double sigmoid_variance(const Gaussian1D& g);

namespace detail {
/// base^expo with the continuous-limit convention 0^expo = 0 for expo > 0.
double pow_or_zero(double base, double expo);
}  // namespace detail

}  // namespace sigmox
