#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "sigmox/mc.hpp"
#include "sigmox/types.hpp"

namespace sigmox {

/// Denominator floor for relative errors, so cells with a near-zero oracle
/// do not divide by zero.
inline constexpr double rel_error_floor = 1e-12;

inline double relative_error(double approx, double oracle) {
    return std::abs(approx - oracle) / std::max(std::abs(oracle), rel_error_floor);
}

/// (mu x sigma) table of approximation values, Monte-Carlo oracle values and
/// relative errors. All matrices are |mu_axis| x |sigma_axis|.
struct ErrorGrid {
    std::vector<double> mu_axis;
    std::vector<double> sigma_axis;
    Eigen::MatrixXd approx;
    Eigen::MatrixXd oracle;
    Eigen::MatrixXd oracle_stderr;
    Eigen::MatrixXd rel_error;
};

/// The standard scalar benchmark axes: 41 linear mu points in [-10, 10] and
/// sigma at the 13 powers of two from 2^-4 to 2^8.
std::vector<double> default_mu_axis();
std::vector<double> default_sigma_axis();

/// Evaluates `approx(mu, sigma)` against the Monte-Carlo estimate of
/// E[f(x)], x ~ N(mu, sigma), on every cell of the grid.
///
/// Each cell draws its own stream seeded by cell_seed(cfg.seed, i, j), so the
/// result is bit-identical regardless of evaluation order or thread count.
/// Cell failures are rethrown with the cell coordinates attached.
/// n_threads = 0 uses the hardware concurrency.
ErrorGrid build_error_grid(const std::function<double(const Gaussian1D&)>& approx,
                           const std::function<double(double)>& oracle_f,
                           const std::vector<double>& mu_axis,
                           const std::vector<double>& sigma_axis, const MCConfig& cfg,
                           unsigned n_threads = 0);

/// As build_error_grid, but with an arbitrary per-cell oracle estimator
/// (e.g. mc_variance instead of mc_expect for variance maps).
ErrorGrid build_error_grid_with(
    const std::function<double(const Gaussian1D&)>& approx,
    const std::function<MCEstimate(const Gaussian1D&, const MCConfig&)>& oracle_estimator,
    const std::vector<double>& mu_axis, const std::vector<double>& sigma_axis,
    const MCConfig& cfg, unsigned n_threads = 0);

/// Axes of the 3-D softmax simulation grid: rho in (-1/2, 1), sigma in
/// (0, 100], mu2 and mu3 in [-5, 5] with mu1 = 0.
struct SimGridAxes {
    std::vector<double> rho;
    std::vector<double> sigma;
    std::vector<double> mu2;
    std::vector<double> mu3;

    static SimGridAxes coarse();  // 9 x 9 x 11 x 11
    static SimGridAxes fine();    // 13 x 13 x 21 x 21

    std::size_t size() const { return rho.size() * sigma.size() * mu2.size() * mu3.size(); }
};

/// Flat (rho, sigma, mu2, mu3) table for the softmax maps; same cell-seeding
/// and determinism contract as ErrorGrid.
struct SimErrorGrid {
    SimGridAxes axes;
    std::vector<double> approx;
    std::vector<double> oracle;
    std::vector<double> oracle_stderr;
    std::vector<double> rel_error;

    std::size_t index(std::size_t ir, std::size_t is, std::size_t i2, std::size_t i3) const {
        return ((ir * axes.sigma.size() + is) * axes.mu2.size() + i2) * axes.mu3.size() + i3;
    }
};

SimErrorGrid build_sim_error_grid(
    const std::function<double(const GaussianVec&)>& approx,
    const std::function<double(const Eigen::VectorXd&)>& oracle_f, const SimGridAxes& axes,
    const MCConfig& cfg, unsigned n_threads = 0);

}  // namespace sigmox
