#pragma once

#include <numbers>
#include <stdexcept>

namespace sigmox {

/// Variance scale that matches a unit-slope logistic CDF to a Gaussian CDF
/// (logistic variance pi^2/3, so the Gaussian variance enters as 3/pi^2).
inline constexpr double moment_match_scale = 3.0 / (std::numbers::pi * std::numbers::pi);

/// Scalar Gaussian belief. Immutable value type.
struct Gaussian1D {
    double mean;
    double variance;

    Gaussian1D(double mean_, double variance_) : mean(mean_), variance(variance_) {
        if (!(variance >= 0.0))
            throw std::invalid_argument("Gaussian1D: variance must be >= 0");
    }
};

/// Inflexion point and slope of the parametric sigmoid s((x - center)/slope).
struct SigmoidShape {
    double center;
    double slope;

    SigmoidShape(double center_, double slope_) : center(center_), slope(slope_) {
        if (!(slope > 0.0))
            throw std::invalid_argument("SigmoidShape: slope must be > 0");
    }
};

/// Variance-rescaling coefficient of the closed-form expected sigmoid
/// s(mean / sqrt(1 + a * variance)).
struct SigmoidCoeff {
    double a;

    explicit SigmoidCoeff(double a_) : a(a_) {
        if (!(a > 0.0))
            throw std::invalid_argument("SigmoidCoeff: a must be > 0");
    }

    /// Default calibrated value (least squares against Monte-Carlo truth).
    static SigmoidCoeff fitted() { return SigmoidCoeff(0.368); }
    /// Analytical alternative from logistic/Gaussian moment matching.
    static SigmoidCoeff moment_matched() { return SigmoidCoeff(moment_match_scale); }
};

/// Coefficients of the closed-form expected log-sigmoid
/// log s((mean + b*variance^c) / sqrt(1 + a*variance^d)).
struct LogSigmoidCoeffs {
    double a;
    double b;
    double c;
    double d;

    LogSigmoidCoeffs(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {
        if (!(a > 0.0 && c > 0.0 && d > 0.0))
            throw std::invalid_argument("LogSigmoidCoeffs: a, c, d must be > 0");
    }

    /// Default calibrated values.
    static LogSigmoidCoeffs fitted() { return LogSigmoidCoeffs(0.205, -0.319, 0.781, 0.870); }
};

}  // namespace sigmox
