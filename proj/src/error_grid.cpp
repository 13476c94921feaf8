#include "sigmox/error_grid.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "sigmox/softmax.hpp"

namespace sigmox {

std::vector<double> default_mu_axis() {
    std::vector<double> mu(41);
    for (int i = 0; i < 41; ++i) mu[i] = -10.0 + 20.0 * i / 40.0;
    return mu;
}

std::vector<double> default_sigma_axis() {
    std::vector<double> s(13);
    for (int k = -4; k <= 8; ++k) s[k + 4] = std::ldexp(1.0, k);
    return s;
}

namespace {

/// Runs `work(cell)` for every cell index in [0, n_cells) on a small pool.
/// The first failing cell (lowest index) wins, so errors are deterministic
/// under parallelism too.
void parallel_cells(std::size_t n_cells, unsigned n_threads,
                    const std::function<void(std::size_t)>& work) {
    if (n_threads == 0) n_threads = std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<std::size_t>(n_threads, n_cells);
    if (n_threads <= 1) {
        for (std::size_t c = 0; c < n_cells; ++c) work(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    std::size_t first_error_cell = n_cells;
    auto runner = [&] {
        for (;;) {
            const std::size_t c = next.fetch_add(1);
            if (c >= n_cells) return;
            try {
                work(c);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (c < first_error_cell) {
                    first_error_cell = c;
                    first_error = std::current_exception();
                }
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(runner);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

ErrorGrid build_error_grid(const std::function<double(const Gaussian1D&)>& approx,
                           const std::function<double(double)>& oracle_f,
                           const std::vector<double>& mu_axis,
                           const std::vector<double>& sigma_axis, const MCConfig& cfg,
                           unsigned n_threads) {
    return build_error_grid_with(
        approx,
        [&oracle_f](const Gaussian1D& g, const MCConfig& c) { return mc_expect(oracle_f, g, c); },
        mu_axis, sigma_axis, cfg, n_threads);
}

ErrorGrid build_error_grid_with(
    const std::function<double(const Gaussian1D&)>& approx,
    const std::function<MCEstimate(const Gaussian1D&, const MCConfig&)>& oracle_estimator,
    const std::vector<double>& mu_axis, const std::vector<double>& sigma_axis,
    const MCConfig& cfg, unsigned n_threads) {
    if (mu_axis.empty() || sigma_axis.empty())
        throw std::invalid_argument("build_error_grid: axes must be non-empty");
    for (double s : sigma_axis)
        if (!(s > 0.0)) throw std::invalid_argument("build_error_grid: sigma axis must be positive");

    const std::size_t nm = mu_axis.size();
    const std::size_t ns = sigma_axis.size();
    ErrorGrid grid;
    grid.mu_axis = mu_axis;
    grid.sigma_axis = sigma_axis;
    grid.approx.resize(nm, ns);
    grid.oracle.resize(nm, ns);
    grid.oracle_stderr.resize(nm, ns);
    grid.rel_error.resize(nm, ns);

    parallel_cells(nm * ns, n_threads, [&](std::size_t cell) {
        const std::size_t i = cell / ns;
        const std::size_t j = cell % ns;
        const Gaussian1D g(mu_axis[i], sigma_axis[j]);
        try {
            const MCConfig cell_cfg(cfg.n_samples, rng::cell_seed(cfg.seed, i, j));
            const MCEstimate est = oracle_estimator(g, cell_cfg);
            const double a = approx(g);
            grid.approx(i, j) = a;
            grid.oracle(i, j) = est.value;
            grid.oracle_stderr(i, j) = est.std_error;
            grid.rel_error(i, j) = relative_error(a, est.value);
        } catch (const std::exception& e) {
            throw EstimationError("error grid cell (" + std::to_string(i) + "," +
                                  std::to_string(j) + ") mu=" + std::to_string(mu_axis[i]) +
                                  " sigma=" + std::to_string(sigma_axis[j]) + ": " + e.what());
        }
    });
    return grid;
}

namespace {

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i)
        v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return v;
}

SimGridAxes make_axes(std::size_t n_rho, std::size_t n_sigma, std::size_t n_mu) {
    SimGridAxes a;
    // rho strictly inside (-1/2, 1); sigma linear up to and including 100.
    a.rho.resize(n_rho);
    for (std::size_t i = 0; i < n_rho; ++i)
        a.rho[i] = -0.5 + 1.5 * static_cast<double>(i + 1) / static_cast<double>(n_rho + 1);
    a.sigma.resize(n_sigma);
    for (std::size_t i = 0; i < n_sigma; ++i)
        a.sigma[i] = 100.0 * static_cast<double>(i + 1) / static_cast<double>(n_sigma);
    a.mu2 = linspace(-5.0, 5.0, n_mu);
    a.mu3 = a.mu2;
    return a;
}

}  // namespace

SimGridAxes SimGridAxes::coarse() { return make_axes(9, 9, 11); }
SimGridAxes SimGridAxes::fine() { return make_axes(13, 13, 21); }

SimErrorGrid build_sim_error_grid(
    const std::function<double(const GaussianVec&)>& approx,
    const std::function<double(const Eigen::VectorXd&)>& oracle_f, const SimGridAxes& axes,
    const MCConfig& cfg, unsigned n_threads) {
    SimErrorGrid grid;
    grid.axes = axes;
    const std::size_t n = axes.size();
    grid.approx.resize(n);
    grid.oracle.resize(n);
    grid.oracle_stderr.resize(n);
    grid.rel_error.resize(n);

    const std::size_t ns = axes.sigma.size();
    const std::size_t n2 = axes.mu2.size();
    const std::size_t n3 = axes.mu3.size();

    parallel_cells(n, n_threads, [&](std::size_t cell) {
        std::size_t rest = cell;
        const std::size_t i3 = rest % n3; rest /= n3;
        const std::size_t i2 = rest % n2; rest /= n2;
        const std::size_t is = rest % ns; rest /= ns;
        const std::size_t ir = rest;
        try {
            Eigen::VectorXd mean(3);
            mean << 0.0, axes.mu2[i2], axes.mu3[i3];
            const GaussianVec g(mean, sim_covariance(SimCovSpec(axes.sigma[is], axes.rho[ir])));
            const MCConfig cell_cfg(cfg.n_samples, rng::cell_seed(cfg.seed, ir * ns + is,
                                                                  i2 * n3 + i3));
            const MCEstimate est = mc_expect_vec(oracle_f, g, cell_cfg);
            const double a = approx(g);
            grid.approx[cell] = a;
            grid.oracle[cell] = est.value;
            grid.oracle_stderr[cell] = est.std_error;
            grid.rel_error[cell] = relative_error(a, est.value);
        } catch (const std::exception& e) {
            throw EstimationError("sim grid cell rho=" + std::to_string(axes.rho[ir]) +
                                  " sigma=" + std::to_string(axes.sigma[is]) +
                                  " mu2=" + std::to_string(axes.mu2[i2]) +
                                  " mu3=" + std::to_string(axes.mu3[i3]) + ": " + e.what());
        }
    });
    return grid;
}

}  // namespace sigmox
