#pragma once

#include <Eigen/Dense>

#include "sigmox/types.hpp"

namespace sigmox {

/// K-dimensional Gaussian belief. Construction validates symmetry (1e-12
/// relative) and positive semidefiniteness (Cholesky, falling back to an
/// eigenvalue check with floor -1e-10 * trace).
struct GaussianVec {
    Eigen::VectorXd mean;
    Eigen::MatrixXd cov;

    GaussianVec(Eigen::VectorXd mean_, Eigen::MatrixXd cov_);

    int dim() const { return static_cast<int>(mean.size()); }
};

/// Weight vector turning a multivariate Gaussian into the scalar Gaussian of
/// a linear combination. pairwise(k, kp, dim) builds e_k - e_kp.
struct Contrast {
    Eigen::VectorXd weights;

    explicit Contrast(Eigen::VectorXd weights_) : weights(std::move(weights_)) {}

    static Contrast pairwise(int k, int kp, int dim);
};

/// Marginal scale / correlation specification of the 3-D simulation
/// covariance sigma * A A^T, A = I + rho * (ones off the diagonal).
/// Positive definite for rho in (-1/2, 1).
struct SimCovSpec {
    double sigma;
    double rho;

    SimCovSpec(double sigma_, double rho_);

    /// Off-diagonal correlation d(rho) = (2 rho + rho^2) / (1 + 2 rho^2).
    double marginal_correlation() const;
};

/// Probability-simplex map exp(x_k)/sum exp, computed with max subtraction.
Eigen::VectorXd softmax(const Eigen::VectorXd& x);

/// Gradient of log softmax_k: e_k - pi(x). Entries sum to zero.
Eigen::VectorXd log_softmax_gradient(const Eigen::VectorXd& x, int k);

/// Hessian of log softmax_k: pi pi^T - Diag(pi). Independent of k,
/// symmetric, negative semidefinite, rows sum to zero.
Eigen::MatrixXd log_softmax_hessian(const Eigen::VectorXd& x);

/// Gradient of softmax_k: pi_k (e_k - pi).
Eigen::VectorXd softmax_gradient(const Eigen::VectorXd& x, int k);

/// Hessian of softmax_k: pi_k (pi pi^T - Diag(pi) + (e_k - pi)(e_k - pi)^T).
Eigen::MatrixXd softmax_hessian(const Eigen::VectorXd& x, int k);

/// Second-order Taylor approximation of E[log pi_k(x)]:
/// log pi_k(mean) + 0.5 tr[(pi pi^T - Diag(pi)) cov].
double taylor_expected_log_softmax(const GaussianVec& g, int k);

/// Taylor approximation of E[pi_k(x)], order 1 or 2. The order-2 value can
/// leave [0,1] for large covariance.
double taylor_expected_softmax(const GaussianVec& g, int k, int order);

/// Scalar moments of a contrast: Gaussian1D(c . mean, c^T cov c).
Gaussian1D contrast_moments(const GaussianVec& g, const Contrast& c);

/// Closed-form approximation of E[pi_k(x)] through pairwise contrasts:
/// 1 / (2 - K + sum_{k' != k} 1/E[s(x_k - x_k')]), each expectation by
/// fixed_form_expected_sigmoid. At K = 2 this is evaluated as the sigmoid
/// path itself so both routes agree bit for bit.
double fixed_form_expected_softmax(const GaussianVec& g, int k,
                                   SigmoidCoeff coeff = SigmoidCoeff::fitted());

/// The 3x3 simulation covariance sigma * A A^T
/// (diagonal sigma (1 + 2 rho^2), off-diagonal sigma (2 rho + rho^2)).
Eigen::MatrixXd sim_covariance(const SimCovSpec& spec);

}  // namespace sigmox
