#pragma once

#include <vector>

#include "sigmox/types.hpp"

namespace sigmox {

/// Soft-thresholded Gaussian: the normalized product of the sigmoid
/// s((x - center)/slope) with the density N(x | mean, variance).
struct SkewNormalParams {
    double center;    // sigmoid inflexion point t
    double slope;     // sigmoid slope rho > 0
    double mean;      // Gaussian mean
    double variance;  // Gaussian variance > 0

    SkewNormalParams(double center_, double slope_, double mean_, double variance_)
        : center(center_), slope(slope_), mean(mean_), variance(variance_) {
        if (!(slope > 0.0))
            throw std::invalid_argument("SkewNormalParams: slope must be > 0");
        if (!(variance > 0.0))
            throw std::invalid_argument("SkewNormalParams: variance must be > 0");
    }
};

/// Sign convention inside the scale factor of the Gaussian-product term.
/// `difference` is the standard product-of-Gaussians identity exp(-(t-mu)^2/..)
/// and is the default; `sum` uses exp(-(t+mu)^2/..) and is kept only for
/// comparison, it loses against a quadrature oracle everywhere the term
/// matters.
enum class SkewNormalOmega { difference, sum };

/// Closed-form CDF approximation of the soft-thresholded Gaussian, clamped
/// to [0, 1]. Accuracy degrades as center approaches or passes the mean; see
/// the tests for the measured envelope.
double skew_normal_cdf(const SkewNormalParams& p, double z,
                       SkewNormalOmega omega = SkewNormalOmega::difference);

/// Log of the unnormalized density: log s((x-t)/rho) + log N(x | mean, var).
double skew_normal_log_pdf_unnorm(const SkewNormalParams& p, double x);

/// Success probabilities of independent Bernoulli variables.
struct BernoulliBatch {
    std::vector<double> lambdas;

    explicit BernoulliBatch(std::vector<double> lambdas_) : lambdas(std::move(lambdas_)) {
        if (lambdas.empty())
            throw std::invalid_argument("BernoulliBatch: needs at least one probability");
        for (double l : lambdas)
            if (!(l >= 0.0 && l <= 1.0))
                throw std::invalid_argument("BernoulliBatch: probabilities must lie in [0,1]");
    }
};

/// Gaussian (mean, variance) such that exp of that Gaussian (a log-normal)
/// matches the mean and variance of sum_i b_i. Requires sum lambda > 0.
Gaussian1D bernoulli_logsum_matched_gaussian(const BernoulliBatch& b);

/// Closed-form approximation of E[log(sum_i b_i + 1)] through the log-normal
/// match and the expected log-sigmoid applied at the negated mean.
double expected_log_sum_bernoulli(const BernoulliBatch& b,
                                  const LogSigmoidCoeffs& coeffs = LogSigmoidCoeffs::fitted());

/// Smooth overestimate of |x|: x - 2 rho log s(x/rho). Lies within
/// [|x|, |x| + 2 rho log 2] and converges to |x| as rho -> 0.
double soft_abs(double x, double rho);

/// Closed-form approximation of E[|x|] for Gaussian x, obtained by pushing
/// the smoothed absolute value through the expected log-sigmoid at the
/// rescaled moments (mean/rho, variance/rho^2).
double expected_abs(const Gaussian1D& g, double rho,
                    const LogSigmoidCoeffs& coeffs = LogSigmoidCoeffs::fitted());

/// Smoothing scale for expected_abs that keeps variance/rho^2 inside the
/// region where the log-sigmoid coefficients were calibrated:
/// max(1e-3, sqrt(variance/30)). Chosen against the folded-normal closed
/// form; fixed tiny rho drives the rescaled variance far outside the
/// calibrated region and loses most of E[|x|] for small |mean|.
double default_abs_smoothing(double variance);

}  // namespace sigmox
