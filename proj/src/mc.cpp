#include "sigmox/mc.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace sigmox {

namespace rng {

std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j) noexcept {
    std::uint64_t state = seed;
    std::uint64_t h = splitmix64(state);
    state = h ^ i;
    h = splitmix64(state);
    state = h ^ j;
    return splitmix64(state);
}

Xoshiro256pp::Xoshiro256pp(std::uint64_t seed) noexcept {
    std::uint64_t state = seed;
    for (auto& word : s_) word = splitmix64(state);
}

static inline std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
}

std::uint64_t Xoshiro256pp::next() noexcept {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double NormalSampler::next() noexcept {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = engine_.uniform01();
    const double u2 = engine_.uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
}

}  // namespace rng

Gaussian1DSampler::Gaussian1DSampler(const Gaussian1D& g, std::uint64_t seed)
    : mean_(g.mean), sd_(std::sqrt(g.variance)), normal_(seed) {}

double Gaussian1DSampler::next() noexcept { return mean_ + sd_ * normal_.next(); }

GaussianVecSampler::GaussianVecSampler(const GaussianVec& g, std::uint64_t seed)
    : mean_(g.mean), scratch_(g.dim()), normal_(seed) {
    Eigen::LLT<Eigen::MatrixXd> llt(g.cov);
    if (llt.info() == Eigen::Success) {
        factor_ = llt.matrixL();
        return;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.cov);
    const double floor = -1e-10 * std::abs(g.cov.trace());
    if (es.eigenvalues().minCoeff() < floor)
        throw EstimationError("GaussianVecSampler: covariance not positive semidefinite");
    // Eigenvalues within rounding of zero are zero; keeping them would move
    // degenerate samples off their supporting subspace.
    const double cutoff = 1e-14 * es.eigenvalues().cwiseAbs().maxCoeff();
    const Eigen::VectorXd clipped =
        (es.eigenvalues().array() < cutoff).select(0.0, es.eigenvalues());
    factor_ = es.eigenvectors() * clipped.cwiseSqrt().asDiagonal();
}

void GaussianVecSampler::next(Eigen::VectorXd& out) noexcept {
    for (Eigen::Index i = 0; i < scratch_.size(); ++i) scratch_[i] = normal_.next();
    out.noalias() = factor_ * scratch_;
    out += mean_;
}

namespace {

/// One-pass accumulation of mean and second central moment.
struct MeanAccumulator {
    double mean = 0.0;
    double m2 = 0.0;
    std::uint64_t n = 0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    MCEstimate estimate() const {
        const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
        return {mean, std::sqrt(var / static_cast<double>(n)), n};
    }
};

[[noreturn]] void throw_nan(std::uint64_t index) {
    throw EstimationError("mc estimate: integrand returned NaN at sample " +
                          std::to_string(index));
}

}  // namespace

MCEstimate mc_expect(const std::function<double(double)>& f, const Gaussian1D& g,
                     const MCConfig& cfg) {
    Gaussian1DSampler sampler(g, cfg.seed);
    MeanAccumulator acc;
    for (std::uint64_t i = 0; i < cfg.n_samples; ++i) {
        const double y = f(sampler.next());
        if (std::isnan(y)) throw_nan(i);
        acc.add(y);
    }
    return acc.estimate();
}

MCEstimate mc_expect_vec(const std::function<double(const Eigen::VectorXd&)>& f,
                         const GaussianVec& g, const MCConfig& cfg) {
    GaussianVecSampler sampler(g, cfg.seed);
    Eigen::VectorXd x(g.dim());
    MeanAccumulator acc;
    for (std::uint64_t i = 0; i < cfg.n_samples; ++i) {
        sampler.next(x);
        const double y = f(x);
        if (std::isnan(y)) throw_nan(i);
        acc.add(y);
    }
    return acc.estimate();
}

MCEstimate mc_variance(const std::function<double(double)>& f, const Gaussian1D& g,
                       const MCConfig& cfg) {
    // One-pass central moments up to order four (Pebay's update formulas).
    Gaussian1DSampler sampler(g, cfg.seed);
    double mean = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (std::uint64_t i = 0; i < cfg.n_samples; ++i) {
        const double y = f(sampler.next());
        if (std::isnan(y)) throw_nan(i);
        const double n1 = static_cast<double>(i);
        const double n = n1 + 1.0;
        const double delta = y - mean;
        const double dn = delta / n;
        const double dn2 = dn * dn;
        const double t1 = delta * dn * n1;
        mean += dn;
        m4 += t1 * dn2 * (n * n - 3.0 * n + 3.0) + 6.0 * dn2 * m2 - 4.0 * dn * m3;
        m3 += t1 * dn * (n - 2.0) - 3.0 * dn * m2;
        m2 += t1;
    }
    const double n = static_cast<double>(cfg.n_samples);
    const double var = n > 1 ? m2 / (n - 1.0) : 0.0;
    const double mu4 = m4 / n;
    const double se2 = (mu4 - var * var) / n;
    return {var, std::sqrt(std::max(se2, 0.0)), cfg.n_samples};
}

}  // namespace sigmox
