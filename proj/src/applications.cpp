#include "sigmox/applications.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sigmox/sigmoid.hpp"

namespace sigmox {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double logistic_scale = pi / std::numbers::sqrt3;  // pi/sqrt(3)
}  // namespace

double skew_normal_cdf(const SkewNormalParams& p, double z, SkewNormalOmega omega_form) {
    const double v_logistic = pi * pi * p.slope * p.slope / 3.0;
    const double v_sum = v_logistic + p.variance;

    const double dd = omega_form == SkewNormalOmega::sum ? p.center + p.mean
                                                         : p.center - p.mean;
    const double omega = std::exp(-0.5 * dd * dd / v_sum) / std::sqrt(2.0 * pi * v_sum);

    const double nu = 1.0 / (3.0 / (pi * pi * p.slope * p.slope) + 1.0 / p.variance);
    const double eta = nu * (3.0 * p.center / (pi * pi * p.slope * p.slope) +
                             p.mean / p.variance);

    const double norm = sigmoid((p.mean - p.center) /
                                std::sqrt(p.slope * p.slope + moment_match_scale * p.variance));

    const double lead = sigmoid((z - p.center) / p.slope) *
                        sigmoid(logistic_scale * (z - p.mean) / std::sqrt(p.variance));
    const double tail = omega * sigmoid(logistic_scale * (z - eta) / std::sqrt(nu));
    return std::clamp((lead - tail) / norm, 0.0, 1.0);
}

double skew_normal_log_pdf_unnorm(const SkewNormalParams& p, double x) {
    const double d = x - p.mean;
    const double log_gauss = -0.5 * d * d / p.variance -
                             0.5 * std::log(2.0 * pi * p.variance);
    return log_sigmoid((x - p.center) / p.slope) + log_gauss;
}

Gaussian1D bernoulli_logsum_matched_gaussian(const BernoulliBatch& b) {
    double sum = 0.0, var = 0.0;
    for (double l : b.lambdas) {
        sum += l;
        var += l * (1.0 - l);
    }
    if (!(sum > 0.0))
        throw std::domain_error("bernoulli_logsum_matched_gaussian: sum of probabilities is 0");
    const double second_moment = var + sum * sum;
    const double mean = 2.0 * std::log(sum) - 0.5 * std::log(second_moment);
    // Nonnegative by construction: second_moment >= sum^2.
    const double variance = std::max(0.0, std::log(second_moment) - 2.0 * std::log(sum));
    return Gaussian1D(mean, variance);
}

double expected_log_sum_bernoulli(const BernoulliBatch& b, const LogSigmoidCoeffs& k) {
    const Gaussian1D m = bernoulli_logsum_matched_gaussian(b);
    // -E[log s(-x)] with the closed form evaluated at the negated mean.
    return -fixed_form_expected_log_sigmoid(Gaussian1D(-m.mean, m.variance), k);
}

double soft_abs(double x, double rho) {
    if (!(rho > 0.0)) throw std::domain_error("soft_abs: rho must be > 0");
    return x - 2.0 * rho * log_sigmoid(x / rho);
}

double expected_abs(const Gaussian1D& g, double rho, const LogSigmoidCoeffs& k) {
    if (!(rho > 0.0)) throw std::domain_error("expected_abs: rho must be > 0");
    // |x| is even in the mean, and the fitted log-sigmoid form is only
    // accurate in the nonnegative-mean orientation, so evaluate there.
    const double mean = std::abs(g.mean);
    const Gaussian1D rescaled(mean / rho, g.variance / (rho * rho));
    return mean - 2.0 * rho * fixed_form_expected_log_sigmoid(rescaled, k);
}

double default_abs_smoothing(double variance) {
    return std::max(1e-3, std::sqrt(variance / 30.0));
}

}  // namespace sigmox
