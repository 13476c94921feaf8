#include "sigmox/softmax.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sigmox/sigmoid.hpp"

namespace sigmox {

namespace {

void check_index(int k, int dim, const char* where) {
    if (k < 0 || k >= dim)
        throw std::out_of_range(std::string(where) + ": index " + std::to_string(k) +
                                " out of range for dimension " + std::to_string(dim));
}

}  // namespace

GaussianVec::GaussianVec(Eigen::VectorXd mean_, Eigen::MatrixXd cov_)
    : mean(std::move(mean_)), cov(std::move(cov_)) {
    const auto k = mean.size();
    if (k < 2)
        throw std::invalid_argument("GaussianVec: dimension must be >= 2");
    if (cov.rows() != k || cov.cols() != k)
        throw std::invalid_argument("GaussianVec: covariance shape mismatch");

    const double scale = std::max(cov.cwiseAbs().maxCoeff(), 1e-300);
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw std::invalid_argument("GaussianVec: covariance not symmetric");

    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov, Eigen::EigenvaluesOnly);
        const double floor = -1e-10 * std::abs(cov.trace());
        if (es.eigenvalues().minCoeff() < floor)
            throw std::invalid_argument("GaussianVec: covariance not positive semidefinite");
    }
}

Contrast Contrast::pairwise(int k, int kp, int dim) {
    check_index(k, dim, "Contrast::pairwise");
    check_index(kp, dim, "Contrast::pairwise");
    Eigen::VectorXd w = Eigen::VectorXd::Zero(dim);
    w[k] += 1.0;
    w[kp] -= 1.0;
    return Contrast(std::move(w));
}

SimCovSpec::SimCovSpec(double sigma_, double rho_) : sigma(sigma_), rho(rho_) {
    if (!(sigma > 0.0))
        throw std::invalid_argument("SimCovSpec: sigma must be > 0");
    if (!(rho > -0.5 && rho < 1.0))
        throw std::invalid_argument("SimCovSpec: rho must lie in (-1/2, 1)");
}

double SimCovSpec::marginal_correlation() const {
    return (2.0 * rho + rho * rho) / (1.0 + 2.0 * rho * rho);
}

Eigen::VectorXd softmax(const Eigen::VectorXd& x) {
    const double m = x.maxCoeff();
    Eigen::VectorXd e = (x.array() - m).exp();
    return e / e.sum();
}

Eigen::VectorXd log_softmax_gradient(const Eigen::VectorXd& x, int k) {
    check_index(k, static_cast<int>(x.size()), "log_softmax_gradient");
    Eigen::VectorXd g = -softmax(x);
    g[k] += 1.0;
    return g;
}

Eigen::MatrixXd log_softmax_hessian(const Eigen::VectorXd& x) {
    const Eigen::VectorXd p = softmax(x);
    Eigen::MatrixXd h = p * p.transpose();
    h.diagonal() -= p;
    return h;
}

Eigen::VectorXd softmax_gradient(const Eigen::VectorXd& x, int k) {
    check_index(k, static_cast<int>(x.size()), "softmax_gradient");
    const Eigen::VectorXd p = softmax(x);
    Eigen::VectorXd g = -p;
    g[k] += 1.0;
    return p[k] * g;
}

Eigen::MatrixXd softmax_hessian(const Eigen::VectorXd& x, int k) {
    check_index(k, static_cast<int>(x.size()), "softmax_hessian");
    const Eigen::VectorXd p = softmax(x);
    Eigen::VectorXd ek = -p;
    ek[k] += 1.0;
    Eigen::MatrixXd h = p * p.transpose();
    h.diagonal() -= p;
    h += ek * ek.transpose();
    return p[k] * h;
}

double taylor_expected_log_softmax(const GaussianVec& g, int k) {
    check_index(k, g.dim(), "taylor_expected_log_softmax");
    const Eigen::VectorXd p = softmax(g.mean);
    const double lead = std::log(p[k]);
    return lead + 0.5 * (log_softmax_hessian(g.mean) * g.cov).trace();
}

double taylor_expected_softmax(const GaussianVec& g, int k, int order) {
    check_index(k, g.dim(), "taylor_expected_softmax");
    const double lead = softmax(g.mean)[k];
    switch (order) {
        case 1:
            return lead;
        case 2:
            return lead + 0.5 * (softmax_hessian(g.mean, k) * g.cov).trace();
        default:
            throw std::invalid_argument("taylor_expected_softmax: unsupported order " +
                                        std::to_string(order));
    }
}

Gaussian1D contrast_moments(const GaussianVec& g, const Contrast& c) {
    if (c.weights.size() != g.mean.size())
        throw std::invalid_argument("contrast_moments: dimension mismatch");
    const double m = c.weights.dot(g.mean);
    // PSD covariance guarantees a nonnegative value up to rounding.
    const double v = std::max(0.0, c.weights.dot(g.cov * c.weights));
    return Gaussian1D(m, v);
}

double fixed_form_expected_softmax(const GaussianVec& g, int k, SigmoidCoeff coeff) {
    const int dim = g.dim();
    check_index(k, dim, "fixed_form_expected_softmax");
    if (dim == 2) {
        // Identical float path as the scalar sigmoid route, so the two agree
        // bit for bit.
        return fixed_form_expected_sigmoid(
            contrast_moments(g, Contrast::pairwise(k, 1 - k, 2)), coeff);
    }
    double denom = 2.0 - static_cast<double>(dim);
    for (int kp = 0; kp < dim; ++kp) {
        if (kp == k) continue;
        const Gaussian1D cm = contrast_moments(g, Contrast::pairwise(k, kp, dim));
        denom += 1.0 / fixed_form_expected_sigmoid(cm, coeff);
    }
    // denom >= 1 analytically (each reciprocal is >= 1 and there are K-1 of
    // them against 2-K), so only float hygiene is needed at the boundary.
    const double v = 1.0 / denom;
    const double eps = 1e-15;
    if (v <= 0.0) return eps;
    if (v >= 1.0) return 1.0 - eps;
    return v;
}

Eigen::MatrixXd sim_covariance(const SimCovSpec& spec) {
    const double diag = 1.0 + 2.0 * spec.rho * spec.rho;
    const double off = 2.0 * spec.rho + spec.rho * spec.rho;
    Eigen::MatrixXd m = Eigen::MatrixXd::Constant(3, 3, spec.sigma * off);
    m.diagonal().setConstant(spec.sigma * diag);
    return m;
}

}  // namespace sigmox
