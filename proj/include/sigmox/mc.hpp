#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>

#include "sigmox/softmax.hpp"
#include "sigmox/types.hpp"

namespace sigmox {

/// Estimation failed in a way statistics cannot paper over (NaN from the
/// integrand, non-PSD covariance, ...).
struct EstimationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MCConfig {
    std::uint64_t n_samples;
    std::uint64_t seed;

    MCConfig(std::uint64_t n_samples_, std::uint64_t seed_)
        : n_samples(n_samples_), seed(seed_) {
        if (n_samples < 1000)
            throw std::invalid_argument("MCConfig: n_samples must be >= 1000");
    }
};

struct MCEstimate {
    double value;
    double std_error;
    std::uint64_t n_samples;
};

namespace rng {

/// SplitMix64. Used to expand seeds into independent streams.
inline std::uint64_t splitmix64(std::uint64_t& state) noexcept {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

/// Derives the per-cell seed for grid evaluation: a splitmix64 cascade over
/// (seed, i, j). Cells are independent of each other and of evaluation order.
std::uint64_t cell_seed(std::uint64_t seed, std::uint64_t i, std::uint64_t j) noexcept;

/// xoshiro256++ with splitmix64 seeding. Hand-rolled (together with the
/// Box-Muller transform below) so streams are bit-identical across standard
/// libraries, which std::normal_distribution does not guarantee.
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) noexcept;

    std::uint64_t next() noexcept;

    /// Uniform in the open interval (0, 1).
    double uniform01() noexcept {
        return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
    }

  private:
    std::uint64_t s_[4];
};

/// Standard normal variates via the Box-Muller transform (pairs, one cached).
class NormalSampler {
  public:
    explicit NormalSampler(std::uint64_t seed) noexcept : engine_(seed) {}

    double next() noexcept;

  private:
    Xoshiro256pp engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace rng

/// Deterministic stream of draws from a scalar Gaussian.
class Gaussian1DSampler {
  public:
    Gaussian1DSampler(const Gaussian1D& g, std::uint64_t seed);

    double next() noexcept;

  private:
    double mean_;
    double sd_;
    rng::NormalSampler normal_;
};

/// Deterministic stream of draws from a K-dimensional Gaussian. The
/// covariance factor comes from Cholesky, falling back to a symmetric
/// eigendecomposition with eigenvalues floored at zero; eigenvalues below
/// -1e-10 * trace raise EstimationError.
class GaussianVecSampler {
  public:
    GaussianVecSampler(const GaussianVec& g, std::uint64_t seed);

    /// Writes the next draw into `out` (resized on first use, no per-sample
    /// allocation afterwards).
    void next(Eigen::VectorXd& out) noexcept;

    const Eigen::MatrixXd& factor() const { return factor_; }

  private:
    Eigen::VectorXd mean_;
    Eigen::MatrixXd factor_;
    Eigen::VectorXd scratch_;
    rng::NormalSampler normal_;
};

/// Monte-Carlo estimate of E[f(x)] for scalar Gaussian x.
/// NaN from f raises EstimationError.
MCEstimate mc_expect(const std::function<double(double)>& f, const Gaussian1D& g,
                     const MCConfig& cfg);

/// Monte-Carlo estimate of E[f(x)] for vector Gaussian x. The argument passed
/// to f is a reused buffer; f must not keep references to it.
MCEstimate mc_expect_vec(const std::function<double(const Eigen::VectorXd&)>& f,
                         const GaussianVec& g, const MCConfig& cfg);

/// Monte-Carlo estimate of Var[f(x)] (unbiased), with the delta-method
/// standard error sqrt((m4 - s^4)/n).
MCEstimate mc_variance(const std::function<double(double)>& f, const Gaussian1D& g,
                       const MCConfig& cfg);

}  // namespace sigmox
