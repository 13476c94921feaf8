#include "sigmox/sigmoid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sigmox {

double sigmoid(double x) noexcept {
    // Branch by sign so exp() never sees a large positive argument.
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

double sigmoid_deriv(double x, int order) {
    const double v = sigmoid(x);
    switch (order) {
        case 1:
            return v * (1.0 - v);
        case 2:
            return v * (1.0 - v) * (1.0 - 2.0 * v);
        default:
            // The product formula for general n fails its own finite-difference
            // check from n = 3 on, so higher orders are refused.
            throw std::invalid_argument("sigmoid_deriv: unsupported order " +
                                        std::to_string(order));
    }
}

double log_sigmoid(double x) noexcept {
    if (x >= 0.0) {
        return -std::log1p(std::exp(-x));
    }
    return x - std::log1p(std::exp(x));
}

double taylor_expected_sigmoid(const Gaussian1D& g, int order) {
    const double v = sigmoid(g.mean);
    switch (order) {
        case 1:
            return v;
        case 2:
            return v * (1.0 + 0.5 * (1.0 - v) * (1.0 - 2.0 * v) * g.variance);
        default:
            throw std::invalid_argument("taylor_expected_sigmoid: unsupported order " +
                                        std::to_string(order));
    }
}

double fixed_form_expected_sigmoid(const Gaussian1D& g, SigmoidCoeff coeff) {
    return sigmoid(g.mean / std::sqrt(1.0 + coeff.a * g.variance));
}

double taylor_expected_log_sigmoid(const Gaussian1D& g) {
    const double v = sigmoid(g.mean);
    return log_sigmoid(g.mean) - 0.5 * v * (1.0 - v) * g.variance;
}

namespace detail {
double pow_or_zero(double base, double expo) {
    return base == 0.0 ? 0.0 : std::pow(base, expo);
}
}  // namespace detail

double fixed_form_expected_log_sigmoid(const Gaussian1D& g, const LogSigmoidCoeffs& k) {
    const double shift = k.b * detail::pow_or_zero(g.variance, k.c);
    const double scale = std::sqrt(1.0 + k.a * detail::pow_or_zero(g.variance, k.d));
    return log_sigmoid((g.mean + shift) / scale);
}

double parametric_expected_sigmoid(const Gaussian1D& g, const SigmoidShape& shape) {
    const double denom = std::sqrt(shape.slope * shape.slope + moment_match_scale * g.variance);
    return sigmoid((g.mean - shape.center) / denom);
}

double expected_reciprocal_shifted(const Gaussian1D& g, double shift) {
    if (!(shift > 0.0))
        throw std::domain_error("expected_reciprocal_shifted: shift must be > 0");
    // 1/(shift + e^-x) = s(x + log shift)/shift, an inflexion shift of the
    // unit-slope sigmoid.
    const Gaussian1D shifted(g.mean + std::log(shift), g.variance);
    return parametric_expected_sigmoid(shifted, SigmoidShape(0.0, 1.0)) / shift;
}

double expected_sigmoid_derivative(const Gaussian1D& g) {
    const double q = std::sqrt(1.0 + moment_match_scale * g.variance);
    return sigmoid_deriv(g.mean / q, 1) / q;
}

double expected_sigmoid_derivative_normal_form(const Gaussian1D& g) {
    const double v = g.variance + std::numbers::pi * std::numbers::pi / 3.0;
    return std::exp(-0.5 * g.mean * g.mean / v) / std::sqrt(2.0 * std::numbers::pi * v);
}

double sigmoid_variance(const Gaussian1D& g) {
    const double q = std::sqrt(1.0 + moment_match_scale * g.variance);
    const double st = sigmoid(g.mean / q);
    return st * (1.0 - st) * (1.0 - 1.0 / q);
}

}  // namespace sigmox
